"""Homomorphisms from a free factor onto Z^r, as integer matrices.

A FactorHom sends generator e_j to an integer vector (the coefficients of
t_1..t_r).  The interesting algorithm here is normalize_basis: integer
column elimination on the matrix of images, where every elementary row
move is mirrored by a Nielsen transformation of the free-group basis, so
the output is a genuine new basis of the free group on which the map takes
the standard shape (e_i -> t_i for i <= r, -> 0 above).
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .words import FreeGroup, Word, inv, mul, substitute

AbelianVector = Tuple[int, ...]

# A Nielsen move, 1-based indices:
#   ("swap", i, j)        exchange basis elements i and j
#   ("invert", i)         replace b_i by b_i^-1
#   ("mult", i, j, s)     replace b_i by b_i * b_j^s   (s = +1 or -1, i != j)
NielsenMove = Tuple


class FactorHom:
    """A homomorphism from a rank-m free group to Z^r, by generator images."""

    __slots__ = ("rank", "target_rank", "images")

    def __init__(self, rank: int, target_rank: int,
                 images: Sequence[Sequence[int]]):
        if rank < 1 or target_rank < 0:
            raise ValueError("need rank >= 1 and target rank >= 0")
        if len(images) != rank:
            raise ValueError(f"expected {rank} generator images, got {len(images)}")
        rows = tuple(tuple(int(v) for v in row) for row in images)
        for row in rows:
            if len(row) != target_rank:
                raise ValueError(f"image rows must have length {target_rank}")
        self.rank = rank
        self.target_rank = target_rank
        self.images = rows

    def __eq__(self, other):
        return (isinstance(other, FactorHom) and self.rank == other.rank
                and self.target_rank == other.target_rank
                and self.images == other.images)

    def __hash__(self):
        return hash((self.rank, self.target_rank, self.images))

    def __repr__(self):
        return f"FactorHom({self.rank}, {self.target_rank}, {list(map(list, self.images))})"

    def is_standard(self) -> bool:
        """True when e_j -> t_j for j <= r and e_j -> 0 for j > r."""
        return self == standard_hom(self.rank, self.target_rank)

    def to_json(self) -> dict:
        return {"m": self.rank, "r": self.target_rank,
                "rows": [list(row) for row in self.images]}

    @classmethod
    def from_json(cls, obj: dict) -> "FactorHom":
        return cls(obj["m"], obj["r"], obj["rows"])


def standard_hom(m: int, r: int) -> FactorHom:
    """e_j -> t_j for j <= r, and e_j -> 0 for j > r."""
    if r > m:
        raise ValueError("target rank cannot exceed the free rank")
    rows = [[1 if j == c else 0 for c in range(r)] for j in range(m)]
    return FactorHom(m, r, rows)


def ab_image(h: FactorHom, w: Word) -> AbelianVector:
    """Image of a word: the signed sum of its letters' image vectors."""
    if w.group.rank != h.rank:
        raise ValueError(f"rank mismatch: word has {w.group.rank}, hom has {h.rank}")
    out = [0] * h.target_rank
    for j, sign in w.letters:
        row = h.images[j - 1]
        for c in range(h.target_rank):
            out[c] += sign * row[c]
    return tuple(out)


def _eliminate(rows: List[List[int]], r: int, moves: List[NielsenMove]) -> bool:
    """Column-by-column gcd elimination, recording Nielsen moves.

    Row operations correspond to basis moves via
        row_i <- row_i + s*row_j   <=>   b_i <- b_i * b_j^s
        negate row_i               <=>   b_i <- b_i^-1
        swap rows i, j             <=>   swap b_i, b_j
    (ab_image is a homomorphism, so each of these preserves "rows = images
    of the current basis").  After column c is finished, that column is the
    c-th unit vector; earlier columns stay untouched because row c has
    zeros there.  Returns False if some column's residual gcd is not 1,
    which is exactly failure of surjectivity.
    """
    m = len(rows)
    for c in range(r):
        while True:
            live = [i for i in range(c, m) if rows[i][c] != 0]
            if not live:
                return False
            p = min(live, key=lambda i: (abs(rows[i][c]), i))
            if rows[p][c] < 0:
                rows[p] = [-v for v in rows[p]]
                moves.append(("invert", p + 1))
            if len(live) == 1:
                break
            for i in live:
                if i == p:
                    continue
                k = rows[i][c] // rows[p][c]
                for _ in range(abs(k)):
                    s = -1 if k > 0 else 1
                    rows[i] = [a + s * b for a, b in zip(rows[i], rows[p])]
                    moves.append(("mult", i + 1, p + 1, s))
        if rows[p][c] != 1:
            return False
        if p != c:
            rows[p], rows[c] = rows[c], rows[p]
            moves.append(("swap", p + 1, c + 1))
        for i in range(m):
            if i == c or rows[i][c] == 0:
                continue
            k = rows[i][c]
            for _ in range(abs(k)):
                s = -1 if k > 0 else 1
                rows[i] = [a + s * b for a, b in zip(rows[i], rows[c])]
                moves.append(("mult", i + 1, c + 1, s))
    return True


def is_surjective(h: FactorHom) -> bool:
    """Do the generator images span all of Z^r?"""
    return _eliminate([list(row) for row in h.images], h.target_rank, [])


def apply_moves(group: FreeGroup, moves: Sequence[NielsenMove]) -> Tuple[Word, ...]:
    """Run a Nielsen move sequence starting from the standard basis."""
    basis = [group.gen(j) for j in range(1, group.rank + 1)]
    for move in moves:
        if move[0] == "swap":
            _, i, j = move
            basis[i - 1], basis[j - 1] = basis[j - 1], basis[i - 1]
        elif move[0] == "invert":
            basis[move[1] - 1] = inv(basis[move[1] - 1])
        elif move[0] == "mult":
            _, i, j, s = move
            bj = basis[j - 1]
            basis[i - 1] = mul(basis[i - 1], bj if s == 1 else inv(bj))
        else:
            raise ValueError(f"unknown move {move!r}")
    return tuple(basis)


def invert_moves(moves: Sequence[NielsenMove]) -> List[NielsenMove]:
    """The move sequence undoing `moves`: reversed, each move inverted."""
    out = []
    for move in reversed(moves):
        if move[0] == "mult":
            _, i, j, s = move
            out.append(("mult", i, j, -s))
        else:
            out.append(move)  # swap and invert are involutions
    return out


class BasisChange:
    """Result of normalize_basis: the audit trail plus both bases.

    new_basis[i] is a word in the *old* generators; on it the homomorphism
    reads e_i -> t_i (i <= r), -> 0 (i > r).  inverse_basis expresses the
    automorphism's inverse the same way, so that substituting new_basis
    into inverse_basis (or vice versa) gives back the identity map.
    """

    __slots__ = ("group", "moves", "new_basis", "inverse_basis")

    def __init__(self, group: FreeGroup, moves: Sequence[NielsenMove]):
        self.group = group
        self.moves = list(moves)
        self.new_basis = apply_moves(group, self.moves)
        self.inverse_basis = apply_moves(group, invert_moves(self.moves))

    def apply(self, w: Word) -> Word:
        """The basis-change automorphism: e_i -> new_basis[i]."""
        return substitute(w, dict(enumerate(self.new_basis, start=1)),
                          target=self.group)

    def unapply(self, w: Word) -> Word:
        """Inverse automorphism: apply(unapply(w)) == w."""
        return substitute(w, dict(enumerate(self.inverse_basis, start=1)),
                          target=self.group)


def normalize_basis(h: FactorHom) -> BasisChange:
    """Find a free-group basis on which h looks standard.

    Raises ValueError unless h is surjective.  The returned basis is one
    valid choice (elimination pivots: smallest absolute value, then lowest
    index); callers should check the postcondition via ab_image rather
    than expect one particular basis.
    """
    rows = [list(row) for row in h.images]
    moves: List[NielsenMove] = []
    if not _eliminate(rows, h.target_rank, moves):
        raise ValueError("homomorphism is not surjective; no normal basis exists")
    return BasisChange(FreeGroup(h.rank), moves)
