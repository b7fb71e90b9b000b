"""Kernels of homomorphisms from products of free groups onto Z^r.

The group K(n, m, r) is the kernel of the map from a product of n rank-m
free groups to Z^r sending generator e_j of every factor to t_j (j <= r)
or to zero (j > r).  It has a finite generating set with three layers:

    a<i>_<j>   the element carrying e_i in factor 1 and e_i^-1 in factor j
               (i <= r, 2 <= j <= n)
    b<i>_<j>   the single letter e_i in factor j (i > r)
    c<i>_<j>   the commutator [e_i, e_j] in factor 1 (i < j <= r)

rewrite_in_generators expresses arbitrary kernel elements over these
symbols constructively: lift factors 2..n letter by letter, peel the
above-r letters of the factor-1 residual as conjugates, collect what is
left into conjugated basic commutators by adjacent transpositions, and
finally translate each conjugator into kernel symbols.

Non-standard surjective maps are supported by changing basis in each free
factor first (see abelian.normalize_basis) and transporting the result.
"""

from __future__ import annotations

import random as _random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .abelian import (AbelianVector, BasisChange, FactorHom, ab_image,
                      is_surjective, normalize_basis, standard_hom)
from .words import FreeGroup, Letter, Word, commutator, conj, inv, mul
from .words import reduce as reduce_word
from .words import to_text


class ProductElement:
    """An element of a product of n rank-m free groups."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Word]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        m = factors[0].group.rank
        if any(w.group.rank != m for w in factors):
            raise ValueError("all factors must share one rank")
        self.factors = factors

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def m(self) -> int:
        return self.factors[0].group.rank

    def __mul__(self, other: "ProductElement") -> "ProductElement":
        if self.n != other.n or self.m != other.m:
            raise ValueError("shape mismatch")
        return ProductElement([mul(a, b) for a, b in zip(self.factors, other.factors)])

    def __invert__(self) -> "ProductElement":
        return ProductElement([inv(w) for w in self.factors])

    def __eq__(self, other):
        return isinstance(other, ProductElement) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __bool__(self):
        return any(self.factors)

    def key(self) -> Tuple[bytes, ...]:
        """Hashable raw form, for visited-set bookkeeping."""
        return tuple(w.data for w in self.factors)

    def total_length(self) -> int:
        return sum(len(w) for w in self.factors)

    def __repr__(self):
        return "(" + ", ".join(to_text(w) for w in self.factors) + ")"

    def to_json(self) -> dict:
        return {"factors": [to_text(w) for w in self.factors]}


def identity_element(n: int, m: int) -> ProductElement:
    F = FreeGroup(m)
    return ProductElement([F.identity] * n)


class GenWord:
    """A word in the abstract symbols of a GeneratingSet.

    Stored with adjacent inverse pairs cancelled (free reduction over the
    symbol alphabet); that is harmless since evaluation is homomorphic.
    """

    __slots__ = ("gens", "syms")

    def __init__(self, gens: "GeneratingSet", syms: Iterable[Tuple[str, int]]):
        out: List[Tuple[str, int]] = []
        for name, sign in syms:
            if name not in gens.realization:
                raise ValueError(f"unknown symbol {name!r}")
            if sign not in (1, -1):
                raise ValueError("symbol signs must be +1 or -1")
            if out and out[-1][0] == name and out[-1][1] == -sign:
                out.pop()
            else:
                out.append((name, sign))
        self.gens = gens
        self.syms = tuple(out)

    def __len__(self):
        return len(self.syms)

    def __eq__(self, other):
        return (isinstance(other, GenWord) and self.gens is other.gens
                and self.syms == other.syms)

    def __mul__(self, other: "GenWord") -> "GenWord":
        return GenWord(self.gens, self.syms + other.syms)

    def __invert__(self) -> "GenWord":
        return GenWord(self.gens, [(nm, -s) for nm, s in reversed(self.syms)])

    def to_text(self) -> str:
        if not self.syms:
            return "1"
        return " ".join(nm if s == 1 else f"{nm}^-1" for nm, s in self.syms)

    def __repr__(self):
        return f"GenWord({self.to_text()!r})"

    def eval(self) -> ProductElement:
        return self.gens.eval(self)


class GeneratingSet:
    """Named kernel generators together with their realizations."""

    __slots__ = ("group", "symbols", "realization")

    def __init__(self, group: "KernelGroup", symbols: Sequence[str],
                 realization: Dict[str, ProductElement]):
        self.group = group
        self.symbols = tuple(symbols)
        self.realization = dict(realization)
        for name in self.symbols:
            g = self.realization[name]
            if not contains(group, g):
                raise ValueError(f"realization of {name} is not in the kernel")

    def eval(self, w: GenWord) -> ProductElement:
        out = identity_element(self.group.n, self.group.m)
        for name, sign in w.syms:
            g = self.realization[name]
            out = out * (g if sign == 1 else ~g)
        return out

    def word(self, syms: Iterable[Tuple[str, int]]) -> GenWord:
        return GenWord(self, syms)

    def parse(self, text: str) -> GenWord:
        """Whitespace-separated symbol names, with ^k for powers."""
        syms: List[Tuple[str, int]] = []
        for token in text.split():
            if token == "1":
                continue
            name, _, exp = token.partition("^")
            k = 1
            if exp:
                try:
                    k = int(exp)
                except ValueError:
                    raise ValueError(f"bad exponent in token {token!r}")
            if name not in self.realization:
                raise ValueError(f"unknown symbol {name!r}")
            syms.extend([(name, 1 if k > 0 else -1)] * abs(k))
        return GenWord(self, syms)


class KernelGroup:
    """Descriptor of K(n, m, r), optionally with non-standard factor maps."""

    __slots__ = ("n", "m", "r", "homs", "_gens", "_basis_changes")

    def __init__(self, n: int, m: int, r: int,
                 homs: Optional[Sequence[FactorHom]] = None):
        if n < 1 or m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        if not 0 <= r <= m:
            raise ValueError("need 0 <= r <= m")
        if homs is None:
            homs = [standard_hom(m, r)] * n
        homs = tuple(homs)
        if len(homs) != n:
            raise ValueError(f"expected {n} factor maps, got {len(homs)}")
        for h in homs:
            if h.rank != m or h.target_rank != r:
                raise ValueError("factor map shape must be m x r")
            if not is_surjective(h):
                raise ValueError("every factor map must be surjective onto Z^r")
        self.n, self.m, self.r = n, m, r
        self.homs = homs
        self._gens = None
        self._basis_changes = None

    @property
    def is_standard(self) -> bool:
        return all(h.is_standard() for h in self.homs)

    def factor_group(self) -> FreeGroup:
        return FreeGroup(self.m)

    def element(self, texts: Sequence[str]) -> ProductElement:
        """Build a ProductElement from factor word texts."""
        if len(texts) != self.n:
            raise ValueError(f"expected {self.n} factor words, got {len(texts)}")
        F = self.factor_group()
        return ProductElement([F.word(t) for t in texts])

    def basis_changes(self) -> Tuple[BasisChange, ...]:
        if self._basis_changes is None:
            self._basis_changes = tuple(normalize_basis(h) for h in self.homs)
        return self._basis_changes

    def __repr__(self):
        tag = "" if self.is_standard else ", custom maps"
        return f"KernelGroup(n={self.n}, m={self.m}, r={self.r}{tag})"


def theta(G: KernelGroup, g: ProductElement) -> AbelianVector:
    """The defining map: sum of the per-factor abelian images."""
    if g.n != G.n or g.m != G.m:
        raise ValueError(f"shape mismatch: element is {g.n}x{g.m}, group wants {G.n}x{G.m}")
    out = [0] * G.r
    for h, w in zip(G.homs, g.factors):
        v = ab_image(h, w)
        for c in range(G.r):
            out[c] += v[c]
    return tuple(out)


def contains(G: KernelGroup, g: ProductElement) -> bool:
    return theta(G, g) == (0,) * G.r


def standard_generators(G: KernelGroup) -> GeneratingSet:
    """The three-layer generating set; needs n >= 2.

    For non-standard factor maps the realizations use the normalized basis
    of each factor in place of the standard letters, so the same symbol
    names describe generators of the actual kernel.
    """
    if G.n < 2:
        raise ValueError("the generating set requires at least two factors")
    if G._gens is not None:
        return G._gens
    F = G.factor_group()
    one = F.identity
    if G.is_standard:
        basis = [tuple(F.gen(j) for j in range(1, G.m + 1))] * G.n
    else:
        basis = [bc.new_basis for bc in G.basis_changes()]

    def put(factors_by_index: Dict[int, Word]) -> ProductElement:
        return ProductElement([factors_by_index.get(i, one) for i in range(1, G.n + 1)])

    symbols: List[str] = []
    realization: Dict[str, ProductElement] = {}
    for i in range(1, G.r + 1):
        for j in range(2, G.n + 1):
            name = f"a{i}_{j}"
            symbols.append(name)
            realization[name] = put({1: basis[0][i - 1], j: inv(basis[j - 1][i - 1])})
    for i in range(G.r + 1, G.m + 1):
        for j in range(1, G.n + 1):
            name = f"b{i}_{j}"
            symbols.append(name)
            realization[name] = put({j: basis[j - 1][i - 1]})
    for i in range(1, G.r + 1):
        for j in range(i + 1, G.r + 1):
            name = f"c{i}_{j}"
            symbols.append(name)
            realization[name] = put({1: commutator(basis[0][i - 1], basis[0][j - 1])})
    G._gens = GeneratingSet(G, symbols, realization)
    return G._gens


def eval_genword(S: GeneratingSet, w: GenWord) -> ProductElement:
    return S.eval(w)


# -- the rewriting algorithm ------------------------------------------------

def normalize_basic_commutator(group: FreeGroup, u: Letter, v: Letter
                               ) -> Tuple[int, int, int, Word]:
    """Express [e_p^sp, e_q^sq] (p != q) as a conjugate of a basic commutator.

    Returns (i, j, sign, w) with i < j such that
        [u, v]  =  w [e_i, e_j]^sign w^-1.

    Uses, for i < j and a = e_i, b = e_j:
        [a, b^-1]   = b^-1 [a,b]^-1 b
        [a^-1, b]   = a^-1 [a,b]^-1 a
        [a^-1, b^-1] = (b a)^-1 [a,b] (b a)
    and [u, v] = [v, u]^-1 (conjugation commutes with inversion, so the
    p > q case just flips the sign after swapping arguments).
    """
    (p, sp), (q, sq) = u, v
    if p == q:
        raise ValueError("need distinct generators")
    sign = 1
    if p > q:
        (p, sp), (q, sq) = (q, sq), (p, sp)
        sign = -1
    if sp == 1 and sq == 1:
        w = group.identity
    elif sp == 1 and sq == -1:
        w, sign = reduce_word(group, [(q, -1)]), -sign
    elif sp == -1 and sq == 1:
        w, sign = reduce_word(group, [(p, -1)]), -sign
    else:
        w = reduce_word(group, [(q, -1), (p, -1)])
    return p, q, sign, w


def peel_high_letters(z: Word, r: int) -> Tuple[List[Tuple[Word, Letter]], Word]:
    """Split off the letters above r as conjugates.

    If z = B0 R1 B1 ... RK BK with each Rt a letter e_k (k > r) and the Bt
    blocks over e_1..e_r, then, writing Pt for the full prefix before Rt,

        z  =  (RK)^{PK} (R_{K-1})^{P_{K-1}} ... (R1)^{P1} . B0 B1 ... BK

    (conjugation x^w = w x w^-1; proof: induct on K, the innermost
    conjugator swallows everything to its left).  Returns the conjugate
    list in that order plus the residual B0...BK, reduced.
    """
    items: List[Tuple[Word, Letter]] = []
    residual: List[Letter] = []
    letters = z.letters
    for t, (k, s) in enumerate(letters):
        if k > r:
            prefix = reduce_word(z.group, letters[:t])
            items.append((prefix, (k, s)))
        else:
            residual.append((k, s))
    items.reverse()
    return items, reduce_word(z.group, residual)


def collect_commutators(w: Word, r: int) -> List[Tuple[Word, int, int, int]]:
    """Write a zero-exponent-sum word over e_1..e_r as conjugated commutators.

    Returns items (conj, i, j, sign), i < j, whose product in the given
    order freely equals w:   w = prod of  conj [e_i,e_j]^sign conj^-1.

    Method: bubble toward sorted order.  One adjacent swap uses
        a b = b a . [a^-1, b^-1]
    and the emitted commutator is pushed past the suffix S via
        X S = S . X^{S^-1}.
    Each swap keeps length and lowers the inversion count; free reduction
    after a swap lowers length; so (length, inversions) descends
    lexicographically and the loop stops.  A sorted reduced word whose
    exponent sums all vanish is empty, which is where it stops.
    """
    if any(k > r for k, _ in w.letters):
        raise ValueError("letters above r must be peeled off first")
    for j in range(1, r + 1):
        if sum(s for k, s in w.letters if k == j) != 0:
            raise ValueError(f"exponent sum of e{j} must vanish")
    group = w.group
    emitted: List[Tuple[Word, int, int, int]] = []
    cur = w
    while True:
        letters = cur.letters
        for t in range(len(letters) - 1):
            (p, sp), (q, sq) = letters[t], letters[t + 1]
            if p > q:
                suffix = reduce_word(group, letters[t + 2:])
                i, j, sign, c = normalize_basic_commutator(
                    group, (p, -sp), (q, -sq))
                emitted.append((mul(inv(suffix), c), i, j, sign))
                cur = reduce_word(
                    group, letters[:t] + ((q, sq), (p, sp)) + letters[t + 2:])
                break
        else:
            break
    if len(cur):
        raise AssertionError("collection left a nonempty sorted residue")
    emitted.reverse()
    return emitted


def _conjugator_symbols(G: KernelGroup, c: Word) -> List[Tuple[str, int]]:
    """Kernel symbols whose evaluation has factor-1 coordinate exactly c.

    Each letter e_j is replaced by a kernel element carrying e_j in factor
    1: the a<j>_2 generator when j <= r, else b<j>_1 b<j>_2^-1.  Since the
    conjugated element lives in factor 1 only, the junk the substitutes
    carry in other factors conjugates the identity and vanishes.
    """
    out: List[Tuple[str, int]] = []
    for j, s in c.letters:
        if j <= G.r:
            out.append((f"a{j}_2", s))
        elif s == 1:
            out.extend([(f"b{j}_1", 1), (f"b{j}_2", -1)])
        else:
            out.extend([(f"b{j}_2", 1), (f"b{j}_1", -1)])
    return out


def _rewrite_standard(G: KernelGroup, g: ProductElement) -> List[Tuple[str, int]]:
    """The three-stage rewriting over a standard-map kernel."""
    syms: List[Tuple[str, int]] = []

    # stage 1: lift factors 2..n letter by letter
    lift: List[Tuple[str, int]] = []
    for i in range(2, G.n + 1):
        for j, s in g.factors[i - 1].letters:
            if j <= G.r:
                lift.append((f"a{j}_{i}", -s))
            else:
                lift.append((f"b{j}_{i}", s))
    gens = standard_generators(G)
    zeta = g * ~gens.eval(GenWord(gens, lift))
    assert all(not w for w in zeta.factors[1:]), "lift must clear factors 2..n"
    z = zeta.factors[0]

    # stage 2: peel letters above r, then collect basic commutators
    peels, residual = peel_high_letters(z, G.r)
    items: List[Tuple[Word, str, int]] = []
    for prefix, (k, s) in peels:
        items.append((prefix, f"b{k}_1", s))
    for cw, i, j, sign in collect_commutators(residual, G.r):
        items.append((cw, f"c{i}_{j}", sign))

    # stage 3: conjugators into symbols
    for cw, name, sign in items:
        gamma = _conjugator_symbols(G, cw)
        syms.extend(gamma)
        syms.append((name, sign))
        syms.extend((nm, -s) for nm, s in reversed(gamma))
    syms.extend(lift)
    return syms


def rewrite_in_generators(G: KernelGroup, g: ProductElement) -> GenWord:
    """Express a kernel element over the standard generating set.

    The result always satisfies eval(standard_generators(G), result) == g;
    no attempt is made to keep it short.  Non-standard factor maps are
    handled by transporting g through the per-factor basis change, which
    identifies the two kernels symbol-for-symbol.
    """
    if G.n < 2:
        raise ValueError("rewriting requires at least two factors")
    if g.n != G.n or g.m != G.m:
        raise ValueError("shape mismatch")
    if not contains(G, g):
        raise ValueError("element is not in the kernel")
    if G.is_standard:
        syms = _rewrite_standard(G, g)
    else:
        std = KernelGroup(G.n, G.m, G.r)
        pulled = ProductElement(
            [bc.unapply(w) for bc, w in zip(G.basis_changes(), g.factors)])
        syms = _rewrite_standard(std, pulled)
    return GenWord(standard_generators(G), syms)


def random_kernel_element(G: KernelGroup, length_budget: int,
                          seed: int) -> ProductElement:
    """Evaluate a random symbol word; deterministic in the seed."""
    gens = standard_generators(G)
    rng = _random.Random(seed)
    if not gens.symbols:
        return identity_element(G.n, G.m)
    syms = [(rng.choice(gens.symbols), rng.choice((1, -1)))
            for _ in range(length_budget)]
    return gens.eval(GenWord(gens, syms))
