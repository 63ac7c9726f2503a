"""Finite-type Cartan data with a diagram involution, root systems and Weyl groups.

Indices are 0-based internally; printing and parsing use 1-based node labels.
Weights are integer tuples in the basis of simple roots.
"""

import re
from functools import lru_cache

__all__ = ["SatakeDiagram", "satake", "parse_tau", "cartan_gram", "ORDER_LESS",
           "ORDER_EQUAL", "ORDER_GREATER", "ORDER_INCOMPARABLE"]


def _chain(n, lengths):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = lengths[i]
    return g


def _link(g, i, j, val):
    g[i][j] = g[j][i] = val


def cartan_gram(letter, n):
    """Gram matrix ((α_i, α_j)) for one irreducible finite type, Bourbaki numbering."""
    letter = letter.upper()
    if letter == "A" and n >= 1:
        g = _chain(n, [2] * n)
        for i in range(n - 1):
            _link(g, i, i + 1, -1)
        return g
    if letter == "B" and n >= 2:
        g = _chain(n, [4] * (n - 1) + [2])
        for i in range(n - 1):
            _link(g, i, i + 1, -2)
        return g
    if letter == "C" and n >= 2:
        g = _chain(n, [2] * (n - 1) + [4])
        for i in range(n - 2):
            _link(g, i, i + 1, -1)
        _link(g, n - 2, n - 1, -2)
        return g
    if letter == "D" and n >= 4:
        g = _chain(n, [2] * n)
        for i in range(n - 2):
            _link(g, i, i + 1, -1)
        _link(g, n - 3, n - 1, -1)
        return g
    if letter == "E" and n in (6, 7, 8):
        g = _chain(n, [2] * n)
        _link(g, 0, 2, -1)
        _link(g, 1, 3, -1)
        for i in range(2, n - 1):
            _link(g, i, i + 1, -1)
        return g
    if letter == "F" and n == 4:
        g = _chain(4, [4, 4, 2, 2])
        _link(g, 0, 1, -2)
        _link(g, 1, 2, -2)
        _link(g, 2, 3, -1)
        return g
    if letter == "G" and n == 2:
        g = _chain(2, [2, 6])
        _link(g, 0, 1, -3)
        return g
    raise ValueError("unknown finite type %s%d" % (letter, n))


def parse_tau(text, n):
    """Cycle notation '1:2' or '1:3,2:4' (1-based) into a 0-based permutation tuple."""
    perm = list(range(n))
    if text is None:
        return tuple(perm)
    text = text.strip()
    if not text or text.lower() in ("id", "identity"):
        return tuple(perm)
    for part in re.split(r"[,;\s]+", text):
        if not part:
            continue
        a, b = part.split(":")
        a, b = int(a) - 1, int(b) - 1
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError("tau entry %r out of range" % part)
        perm[a], perm[b] = b, a
    return tuple(perm)


ORDER_LESS = "less"
ORDER_GREATER = "greater"
ORDER_EQUAL = "equal"
ORDER_INCOMPARABLE = "incomparable"


class SatakeDiagram:
    """Cartan datum (C, D) with an involution τ of the Dynkin diagram (no black nodes)."""

    def __init__(self, gram, tau=None, name=None, tau_text=None):
        n = len(gram)
        self.n = n
        self.gram = tuple(tuple(r) for r in gram)
        self.d = tuple(gram[i][i] // 2 for i in range(n))
        for i in range(n):
            if gram[i][i] <= 0 or gram[i][i] % 2:
                raise ValueError("diagonal of the Gram matrix must be even and positive")
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
                if i != j and gram[i][j] > 0:
                    raise ValueError("off-diagonal entries must be nonpositive")
                if gram[i][j] % self.d[i]:
                    raise ValueError("Gram matrix is not a symmetrized Cartan matrix")
        self.cartan = tuple(tuple(gram[i][j] // self.d[i] for j in range(n)) for i in range(n))
        self.tau = tuple(tau) if tau is not None else tuple(range(n))
        if sorted(self.tau) != list(range(n)):
            raise ValueError("tau is not a permutation")
        for i in range(n):
            if self.tau[self.tau[i]] != i:
                raise ValueError("tau is not an involution")
            for j in range(n):
                if self.cartan[i][j] != self.cartan[self.tau[i]][self.tau[j]]:
                    raise ValueError("tau is not a diagram automorphism")
        self.name = name or "custom"
        self.tau_text = tau_text if tau_text is not None else self._tau_cycles()
        self._posroots = None

    def _tau_cycles(self):
        return ",".join("%d:%d" % (i + 1, j + 1) for i, j in enumerate(self.tau) if i < j)

    def __repr__(self):
        t = self.tau_text
        return "SatakeDiagram(%s%s)" % (self.name, ", tau=" + t if t else "")

    def key(self):
        return (self.gram, self.tau)

    def __eq__(self, other):
        return isinstance(other, SatakeDiagram) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- lattice
    def zero(self):
        return (0,) * self.n

    def simple(self, i):
        w = [0] * self.n
        w[i] = 1
        return tuple(w)

    def bil(self, a, b):
        g = self.gram
        s = 0
        for i, x in enumerate(a):
            if x:
                row = g[i]
                for j, y in enumerate(b):
                    if y:
                        s += x * y * row[j]
        return s

    def bil_simple(self, i, b):
        row = self.gram[i]
        return sum(row[j] * y for j, y in enumerate(b) if y)

    def tau_weight(self, a):
        out = [0] * self.n
        for i, x in enumerate(a):
            out[self.tau[i]] = x
        return tuple(out)

    def height(self, a):
        return sum(a)

    def reflect(self, i, a):
        """s_i(a) = a - <α_i^v, a> α_i."""
        c = 2 * self.bil_simple(i, a) // self.gram[i][i]
        if not c:
            return tuple(a)
        out = list(a)
        out[i] -= c
        return tuple(out)

    def apply_word(self, word, a):
        """s_{w1} ... s_{wk}(a)."""
        for i in reversed(word):
            a = self.reflect(i, a)
        return a

    # -- roots and Weyl group
    def positive_roots(self):
        if self._posroots is None:
            seen = {self.simple(i) for i in range(self.n)}
            todo = list(seen)
            while todo:
                a = todo.pop()
                for i in range(self.n):
                    b = self.reflect(i, a)
                    if all(x >= 0 for x in b) and b not in seen:
                        seen.add(b)
                        todo.append(b)
            self._posroots = sorted(seen, key=lambda r: (sum(r), r))
        return list(self._posroots)

    def is_reduced(self, word):
        for k in range(len(word)):
            b = self.apply_word(word[:k], self.simple(word[k]))
            if any(x < 0 for x in b):
                return False
        return True

    def positive_root_sequence(self, word):
        out = []
        for k in range(len(word)):
            b = self.apply_word(word[:k], self.simple(word[k]))
            if any(x < 0 for x in b):
                raise ValueError("word %s is not reduced" % (fmt_word(word),))
            out.append(b)
        return out

    def element(self, word):
        """Weyl group element as the tuple of images of simple roots."""
        return tuple(self.apply_word(word, self.simple(j)) for j in range(self.n))

    def weyl_act(self, elem, a):
        out = [0] * self.n
        for j, x in enumerate(a):
            if x:
                for k, y in enumerate(elem[j]):
                    out[k] += x * y
        return tuple(out)

    def length(self, word):
        """Length of the Weyl element given by word."""
        e = self.element(word)
        return sum(1 for r in self.positive_roots() if any(x < 0 for x in self.weyl_act(e, r)))

    def longest_word(self):
        word = []
        N = len(self.positive_roots())
        while len(word) < N:
            for i in range(self.n):
                if self.is_reduced(word + [i]):
                    word.append(i)
                    break
        return tuple(word)

    # -- restricted Weyl group W_τ
    def representatives(self):
        """One node per τ-orbit (the smaller index)."""
        return [i for i in range(self.n) if i <= self.tau[i]]

    def restricted_reflection(self, i):
        t = self.tau[i]
        c = self.cartan[i][t]
        if c == 2:
            return (i,)
        if c == 0:
            return (i, t)
        if c == -1:
            return (i, t, i)
        raise ValueError("restricted reflection undefined for c_{i,tau i} = %d" % c)

    def tau_i(self, i, j):
        """The rank-one involution: r_i(α_j) = -α_{τ_i(j)} for j in {i, τi}."""
        t = self.tau[i]
        if j not in (i, t):
            raise ValueError("tau_i(%d, %d): second index must be i or tau(i)" % (i + 1, j + 1))
        img = self.apply_word(self.restricted_reflection(i), self.simple(j))
        neg = tuple(-x for x in img)
        for k in (i, t):
            if neg == self.simple(k):
                return k
        raise ValueError("restricted reflection does not permute the rank-one roots")

    def tau_i_weight(self, i, a):
        """τ_i acting on a weight supported on {i, τi}."""
        out = [0] * self.n
        for j, x in enumerate(a):
            if x:
                out[self.tau_i(i, j)] += x
        return tuple(out)

    def restricted_longest_word(self, first=None):
        """Reduced expression of w_0 in W_τ as a list of representatives."""
        reps = self.representatives()
        N = len(self.positive_roots())
        seq = []
        word = []
        if first is not None:
            rep = min(first, self.tau[first])
            seq.append(rep)
            word.extend(self.restricted_reflection(rep))
        while len(word) < N:
            for i in reps:
                cand = word + list(self.restricted_reflection(i))
                if self.is_reduced(cand):
                    seq.append(i)
                    word = cand
                    break
            else:
                raise RuntimeError("greedy search for w_0 in W_tau got stuck")
        return seq

    def adapted_longest_word(self, first=None):
        word = []
        for i in self.restricted_longest_word(first):
            word.extend(self.restricted_reflection(i))
        word = tuple(word)
        if not self.is_reduced(word) or len(word) != len(self.positive_roots()):
            raise RuntimeError("adapted word is not a reduced word of w_0")
        return word

    def restricted_elements(self, maxlen):
        """Elements of W_τ as (reduced r-sequence, element) for r-length <= maxlen."""
        ident = self.element(())
        found = {ident: ()}
        frontier = [((), ())]
        out = [((), ident)]
        for _ in range(maxlen):
            nxt = []
            for seq, word in frontier:
                for i in self.representatives():
                    w2 = word + self.restricted_reflection(i)
                    if not self.is_reduced(w2):
                        continue
                    e = self.element(w2)
                    if e in found:
                        continue
                    found[e] = seq + (i,)
                    nxt.append((seq + (i,), w2))
                    out.append((seq + (i,), e))
            frontier = nxt
        return out

    # -- orders
    def order_pairs(self, key1, key2):
        """Compare (α, wt b) keys: comparable only at equal total weight α+τα+wt b."""
        a, wa = key1
        b, wb = key2
        tot1 = tuple(x + y + z for x, y, z in zip(a, self.tau_weight(a), wa))
        tot2 = tuple(x + y + z for x, y, z in zip(b, self.tau_weight(b), wb))
        if tot1 != tot2:
            return ORDER_INCOMPARABLE
        diff = tuple(y - x for x, y in zip(a, b))
        if not any(diff):
            return ORDER_EQUAL
        if all(x >= 0 for x in diff):
            return ORDER_LESS
        if all(x <= 0 for x in diff):
            return ORDER_GREATER
        return ORDER_INCOMPARABLE

    # -- derived diagrams
    def doubled(self):
        """Diagram on two copies of the nodes with τ swapping the copies."""
        n = self.n
        g = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                g[i][j] = g[i + n][j + n] = self.gram[i][j]
        tau = tuple(list(range(n, 2 * n)) + list(range(n)))
        d = SatakeDiagram(g, tau, name="double(%s)" % self.name)
        d.double_of = self
        return d

    def components(self):
        """Connected components of the Dynkin diagram, as sorted index lists."""
        seen = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = []
            todo = [s]
            seen.add(s)
            while todo:
                i = todo.pop()
                comp.append(i)
                for j in range(self.n):
                    if j not in seen and self.gram[i][j]:
                        seen.add(j)
                        todo.append(j)
            comps.append(sorted(comp))
        return comps


def fmt_word(word):
    return "(" + ",".join(str(i + 1) for i in word) + ")"


@lru_cache(maxsize=None)
def satake(name, tau=None):
    """Build a diagram from a type name like 'A2', 'B2', 'A1xA1' and cycle notation τ."""
    parts = re.split(r"[x×*]", name.strip())
    blocks = []
    for p in parts:
        m = re.fullmatch(r"([A-Ga-g])(\d+)", p.strip())
        if not m:
            raise ValueError("cannot parse Cartan type %r" % name)
        blocks.append(cartan_gram(m.group(1), int(m.group(2))))
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    o = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                g[o + i][o + j] = b[i][j]
        o += k
    perm = parse_tau(tau, n)
    label = "x".join(p.strip().upper() for p in parts)
    return SatakeDiagram(g, perm, name=label)
