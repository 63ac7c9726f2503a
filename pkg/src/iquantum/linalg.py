"""Sparse Gaussian elimination over Scalars."""

from .scalars import ONE, ZERO

__all__ = ["InconsistentSystem", "LinearSolver", "solve", "rank"]


class InconsistentSystem(ValueError):
    pass


def _sub_into(target, c, vec):
    for r, x in vec.items():
        y = target.get(r, ZERO) - c * x
        if y:
            target[r] = y
        else:
            target.pop(r, None)


class LinearSolver:
    """Fully reduced column echelon form of a list of sparse columns.

    Columns are dicts row-key -> Scalar. solve(rhs) returns coefficients x
    with Σ x_k cols[k] = rhs (free variables zero) or raises.
    """

    def __init__(self, cols):
        self.ncols = len(cols)
        self.pivots = []  # (row, reduced column, combination of original columns)
        self.dependent = []
        for k, col in enumerate(cols):
            vec = dict(col)
            comb = {k: ONE}
            for row, pcol, pcomb in self.pivots:
                c = vec.get(row)
                if c:
                    _sub_into(vec, c, pcol)
                    _sub_into(comb, c, pcomb)
            if not vec:
                self.dependent.append(k)
                continue
            row = min(vec, key=repr)
            inv = vec[row].inverse()
            vec = {r: x * inv for r, x in vec.items()}
            comb = {j: x * inv for j, x in comb.items()}
            for prow, pcol, pcomb in self.pivots:
                c = pcol.get(row)
                if c:
                    _sub_into(pcol, c, vec)
                    _sub_into(pcomb, c, comb)
            self.pivots.append((row, vec, comb))

    @property
    def rank(self):
        return len(self.pivots)

    def solve(self, rhs):
        x = [ZERO] * self.ncols
        rest = dict(rhs)
        for row, pcol, pcomb in self.pivots:
            c = rest.get(row)
            if not c:
                continue
            _sub_into(rest, c, pcol)
            for j, y in pcomb.items():
                x[j] = x[j] + c * y
        if rest:
            raise InconsistentSystem("linear system has no solution")
        return x


def rank(cols):
    return LinearSolver(cols).rank


def solve(cols, rhs):
    return LinearSolver(cols).solve(rhs)
