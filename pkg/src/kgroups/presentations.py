"""Finite presentations, null expressions, and exact area search.

Area of a null-homotopic word w: the least T such that w is freely equal
to a product of T conjugated relators.  The search inserts relator
variants into reduced words (areasearch module); exactness holds within a
documented completeness regime: intermediate words are capped at
|w| + len_cap_factor * (longest relator), and the optimum is only claimed
for expressions whose intermediate products stay under that cap.

Null-homotopy itself is decided through an attached evaluation into a
concrete group (a product of free groups, or free abelian) that the
caller declares faithful; presentations without one still support
verify/search but not the membership question.
"""

from __future__ import annotations

import concurrent.futures
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .areasearch import greedy_probe, run_search
from .backend import ops
from .kernels import ProductElement, identity_element
from .words import FreeGroup, Word, inv, mul, parse_word, to_text
from .words import reduce as reduce_word

DEFAULT_NODE_CAP = 200_000
DEFAULT_LEN_CAP_FACTOR = 4


class Evaluation:
    """Images of the alphabet in a concrete group, declared faithful.

    Supports products of free groups (ProductElement images) and free
    abelian targets (integer tuple images).  Faithfulness -- that a word
    evaluates to the identity exactly when it is null-homotopic -- is the
    caller's assertion; this class only does the evaluating.
    """

    __slots__ = ("kind", "images")

    def __init__(self, images: Sequence[Union[ProductElement, Tuple[int, ...]]]):
        images = tuple(images)
        if not images:
            raise ValueError("need at least one image")
        if isinstance(images[0], ProductElement):
            self.kind = "product"
            if not all(isinstance(g, ProductElement) for g in images):
                raise ValueError("mixed image kinds")
        else:
            self.kind = "abelian"
            images = tuple(tuple(int(v) for v in row) for row in images)
            if len({len(row) for row in images}) > 1:
                raise ValueError("abelian images must share one length")
        self.images = images

    def eval_word(self, w: Word):
        if self.kind == "product":
            out = identity_element(self.images[0].n, self.images[0].m)
            for j, s in w.letters:
                g = self.images[j - 1]
                out = out * (g if s == 1 else ~g)
            return out
        r = len(self.images[0])
        acc = [0] * r
        for j, s in w.letters:
            for c in range(r):
                acc[c] += s * self.images[j - 1][c]
        return tuple(acc)

    def is_identity(self, el) -> bool:
        if self.kind == "product":
            return not el
        return not any(el)


class Presentation:
    """A finite presentation with optional faithful evaluation."""

    __slots__ = ("group", "relators", "evaluation")

    def __init__(self, names: Sequence[str], relators: Sequence[Union[str, Word]],
                 evaluation: Optional[Evaluation] = None):
        self.group = FreeGroup(len(names), names=names)
        rels = []
        for rel in relators:
            w = parse_word(self.group, rel) if isinstance(rel, str) else rel
            if not w:
                raise ValueError("relators must be nonempty")
            rels.append(w)
        self.relators = tuple(rels)
        self.evaluation = evaluation
        if evaluation is not None:
            if len(evaluation.images) != self.group.rank:
                raise ValueError("need one image per alphabet symbol")
            for w in self.relators:
                if not evaluation.is_identity(evaluation.eval_word(w)):
                    raise ValueError(f"relator {to_text(w)} does not evaluate to the identity")

    def word(self, text: str) -> Word:
        return parse_word(self.group, text)

    def to_text(self) -> str:
        return "< " + ", ".join(self.group.names) + " | " + \
            ", ".join(to_text(r) for r in self.relators) + " >"

    def __repr__(self):
        return f"Presentation({self.to_text()!r})"


def _split_top_level(text: str) -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_presentation(text: str, evaluation: Optional[Evaluation] = None
                       ) -> Presentation:
    """Parse `< a, b | [a,b], a^2 >` style text (commas split at depth 0)."""
    t = text.strip()
    if not (t.startswith("<") and t.endswith(">")):
        raise ValueError("presentation text must be wrapped in < ... >")
    body = t[1:-1]
    if "|" not in body:
        raise ValueError("presentation text needs a | between alphabet and relators")
    alpha, rels = body.split("|", 1)
    names = _split_top_level(alpha)
    if any(not n for n in names):
        raise ValueError("empty alphabet symbol")
    relator_texts = [r for r in _split_top_level(rels) if r]
    return Presentation(names, relator_texts, evaluation)


class NullExpression:
    """A certificate: w = product of conj . relator^sign . conj^-1.

    Relator indices are 0-based positions into the presentation's list.
    """

    __slots__ = ("items",)

    def __init__(self, items: Iterable[Tuple[Word, int, int]]):
        self.items = tuple(items)
        for _, _, sign in self.items:
            if sign not in (1, -1):
                raise ValueError("signs must be +1 or -1")

    @property
    def area(self) -> int:
        return len(self.items)

    def to_json(self) -> list:
        return [{"conj": to_text(c), "rel": ri, "sign": s}
                for c, ri, s in self.items]

    @classmethod
    def from_json(cls, P: Presentation, data: Sequence[dict]) -> "NullExpression":
        return cls([(parse_word(P.group, d["conj"]), int(d["rel"]), int(d["sign"]))
                    for d in data])

    def __repr__(self):
        return f"NullExpression(area={self.area})"


def is_null_homotopic(P: Presentation, w: Word) -> bool:
    if P.evaluation is None:
        raise ValueError("no evaluation oracle attached to this presentation")
    return P.evaluation.is_identity(P.evaluation.eval_word(w))


def verify_null_expression(P: Presentation, w: Word, expr: NullExpression) -> bool:
    """Multiply the certificate out and compare with w, freely."""
    acc = P.group.identity
    for conj, ri, sign in expr.items:
        if not 0 <= ri < len(P.relators):
            raise ValueError(f"bad relator index {ri}")
        r = P.relators[ri]
        piece = mul(mul(conj, r if sign == 1 else inv(r)), inv(conj))
        acc = mul(acc, piece)
    return acc == w


# -- search plumbing ---------------------------------------------------------

def _variants(P: Presentation) -> Tuple[List[bytes], List[Tuple[int, int, bytes]]]:
    """All distinct cyclic rotations of each relator and its inverse.

    A rotation by t of r^sigma equals u^-1 r^sigma u with u the length-t
    prefix, which is what witness reconstruction needs.  Duplicates keep
    their first metadata (relator order, then +1 before -1, then rotation
    order) so witnesses are deterministic.
    """
    variants: List[bytes] = []
    meta: List[Tuple[int, int, bytes]] = []
    first: Dict[bytes, int] = {}
    for ri, rel in enumerate(P.relators):
        for sigma in (1, -1):
            rw = rel.data if sigma == 1 else ops.invert(rel.data)
            for t in range(len(rw)):
                v = ops.free_reduce(rw[t:] + rw[:t])
                if v not in first:
                    first[v] = len(variants)
                    variants.append(v)
                    meta.append((ri, sigma, rw[:t]))
    return variants, meta


def _exponent_sums(data: bytes, rank: int) -> List[int]:
    out = [0] * rank
    for b in data:
        out[b // 2] += 1 if b % 2 == 0 else -1
    return out


def _lattice_area(data: bytes) -> int:
    cx = area = 0
    for b in data:
        if b == 0:
            cx += 1
        elif b == 1:
            cx -= 1
        elif b == 2:
            area += cx
        elif b == 3:
            area -= cx
    return area


def _auto_hparams(P: Presentation, variants: Sequence[bytes]):
    """Build admissible heuristic parameters from the variant list.

    Per-generator signed exponent sums always qualify (free reduction
    preserves them; one insertion shifts them by the variant's sum).  The
    rank-2 lattice-area term additionally needs every variant to have zero
    exponent sums in both generators, otherwise its change per move is
    unbounded.  Returns (hparams, obstructions) where obstructions maps
    each conserved functional to its required value for feasibility.
    """
    rank = P.group.rank
    maxes = [0] * rank
    for v in variants:
        for j, s in enumerate(_exponent_sums(v, rank)):
            maxes[j] = max(maxes[j], abs(s))
    tables = []
    conserved = []    # generator indices whose exponent sum no move changes
    for j in range(rank):
        if maxes[j] > 0:
            tbl = bytearray(128 for _ in range(256))
            tbl[2 * j] = 129
            tbl[2 * j + 1] = 127
            tables.append((bytes(tbl), maxes[j]))
        else:
            conserved.append(j)
    grid_amax = 0
    grid_conserved = False
    if rank == 2 and maxes[0] == 0 and maxes[1] == 0:
        amax = max((abs(_lattice_area(v)) for v in variants), default=0)
        if amax > 0:
            grid_amax = amax
        else:
            grid_conserved = True
    return (tuple(tables), grid_amax), conserved, grid_conserved


class AreaResult:
    """Outcome of area_search: exact with witness, or exhausted with bound.

    `lower_bound` (exhausted runs) and exactness both hold within the
    completeness regime recorded in `caps`: expressions whose intermediate
    words exceed the length cap are outside the searched space.
    regime_empty means the whole capped space was explored and contains no
    expression at all.
    """

    __slots__ = ("status", "area", "witness", "lower_bound", "nodes",
                 "pushes", "caps", "regime_empty", "stop_reason",
                 "unconditional")

    def __init__(self, status, area, witness, lower_bound, nodes, pushes,
                 caps, regime_empty, stop_reason, unconditional=False):
        self.status = status
        self.area = area
        self.witness = witness
        self.lower_bound = lower_bound
        self.nodes = nodes
        self.pushes = pushes
        self.caps = caps
        self.regime_empty = regime_empty
        self.stop_reason = stop_reason
        # exact results matching the start heuristic carry no length-cap
        # caveat: the heuristic bounds the true area from below regardless
        # of intermediate word lengths
        self.unconditional = unconditional

    def to_json(self) -> dict:
        out = {"status": self.status, "nodes": self.nodes,
               "pushes": self.pushes, "caps": self.caps,
               "stop_reason": self.stop_reason}
        if self.status == "exact":
            out["area"] = self.area
            out["witness"] = self.witness.to_json()
            out["unconditional"] = self.unconditional
        else:
            out["lower_bound"] = self.lower_bound
            out["regime_empty"] = self.regime_empty
        return out

    def __repr__(self):
        if self.status == "exact":
            return f"AreaResult(exact, area={self.area})"
        return (f"AreaResult(exhausted, lower_bound={self.lower_bound}, "
                f"regime_empty={self.regime_empty})")


def area_search(P: Presentation, w: Word, *, node_cap: int = DEFAULT_NODE_CAP,
                push_cap: Optional[int] = None,
                len_cap_factor: int = DEFAULT_LEN_CAP_FACTOR,
                heuristic: bool = True,
                stop_at_bound: Optional[int] = None) -> AreaResult:
    """Minimal-area search for a null expression of w.

    When the presentation carries an evaluation, non-null-homotopic words
    are rejected up front.  stop_at_bound turns the run into a lower-bound
    certificate: it halts once every cheaper state is settled.
    """
    if w.group != P.group:
        raise ValueError("word is not over the presentation's alphabet")
    if P.evaluation is not None and not is_null_homotopic(P, w):
        raise ValueError("word is not null-homotopic")
    variants, meta = _variants(P)
    maxlen = max((len(v) for v in variants), default=0)
    len_cap = len(w.data) + len_cap_factor * maxlen
    if push_cap is None:
        push_cap = 8 * node_cap
    caps = {"node_cap": node_cap, "push_cap": push_cap, "len_cap": len_cap,
            "len_cap_factor": len_cap_factor, "heuristic": heuristic}

    hparams, conserved, grid_conserved = _auto_hparams(P, variants)
    sums = _exponent_sums(w.data, P.group.rank)
    for j in conserved:
        if sums[j] != 0:
            return AreaResult("exhausted", None, None, None, 0, 0, caps, True,
                              "abelianization obstruction: no expression exists"
                              " at any length")
    if grid_conserved and _lattice_area(w.data) != 0:
        return AreaResult("exhausted", None, None, None, 0, 0, caps, True,
                          "area-cocycle obstruction: no expression exists"
                          " at any length")
    if not heuristic:
        hparams = None

    h0 = ops.heuristic(w.data, hparams)
    if heuristic and stop_at_bound is None and w.data:
        probe_path = greedy_probe(w.data, variants, len_cap=len_cap,
                                  node_budget=50 * h0 + 200, hparams=hparams)
        if probe_path is not None:
            witness = _witness_from_path(P, w, probe_path, variants, meta)
            assert witness.area == h0
            return AreaResult("exact", h0, witness, None, 0, 0, caps, False,
                              "greedy probe matched the heuristic lower bound",
                              unconditional=True)

    out = run_search(w.data, variants, len_cap=len_cap, node_cap=node_cap,
                     push_cap=push_cap, hparams=hparams,
                     stop_at_bound=stop_at_bound)
    if out.cost is None:
        return AreaResult("exhausted", None, None, out.lower_bound, out.nodes,
                          out.pushes, caps, out.regime_empty, out.stop_reason)
    witness = _witness_from_path(P, w, out.path, variants, meta)
    assert witness.area == out.cost
    return AreaResult("exact", out.cost, witness, None, out.nodes, out.pushes,
                      caps, False, out.stop_reason,
                      unconditional=(out.cost == h0))


def _witness_from_path(P: Presentation, w: Word, path, variants, meta
                       ) -> NullExpression:
    """Replay an insertion path into a verified NullExpression.

    Inserting variant v = u^-1 r^sigma u at position p rewrites the state
    as w_t = (prefix u^-1) r^{-sigma} (prefix u^-1)^-1 . w_{t+1}, so the
    certificate items come out in step order.
    """
    items = []
    cur = w.data
    for pos, vidx in path:
        ri, sigma, u = meta[vidx]
        conj = Word(P.group, ops.free_reduce(cur[:pos] + ops.invert(u)))
        items.append((conj, ri, -sigma))
        cur = ops.insert_reduce(cur, pos, variants[vidx])
    assert cur == b""
    witness = NullExpression(items)
    assert verify_null_expression(P, w, witness), "witness failed to verify"
    return witness


# -- small-n Dehn profiling --------------------------------------------------

class DehnResult:
    __slots__ = ("n", "value", "exact", "witness", "classes_searched")

    def __init__(self, n, value, exact, witness, classes_searched):
        self.n = n
        self.value = value
        self.exact = exact
        self.witness = witness
        self.classes_searched = classes_searched

    def to_json(self) -> dict:
        return {"n": self.n, "value": self.value, "exact": self.exact,
                "witness": to_text(self.witness) if self.witness else None,
                "classes_searched": self.classes_searched}

    def __repr__(self):
        tag = "exact" if self.exact else "lower bound"
        return f"DehnResult(n={self.n}, value={self.value}, {tag})"


def _canonical_class(data: bytes) -> bytes:
    """Cyclic-reduce, then take the least rotation of the word and its inverse.

    Area is invariant under both moves (conjugating a null expression by a
    letter, or inverting all its items, is again a null expression of the
    same length), so one representative per class suffices.
    """
    while len(data) >= 2 and (data[0] ^ data[-1]) == 1:
        data = data[1:-1]
    best = None
    for form in (data, ops.invert(data)):
        for t in range(max(len(form), 1)):
            rot = form[t:] + form[:t]
            if best is None or rot < best:
                best = rot
    return best


def _null_classes(P: Presentation, n: int) -> List[Word]:
    """Canonical representatives of null-homotopic classes of length <= n."""
    rank = P.group.rank
    letters = list(range(2 * rank))
    reps = set()
    stack: List[List[int]] = [[]]
    while stack:
        prefix = stack.pop()
        if prefix:
            w = Word(P.group, bytes(prefix))
            if is_null_homotopic(P, w):
                reps.add(_canonical_class(w.data))
        if len(prefix) < n:
            for c in letters:
                if prefix and (prefix[-1] ^ c) == 1:
                    continue
                stack.append(prefix + [c])
    reps.discard(b"")
    return [Word(P.group, d) for d in sorted(reps, key=lambda d: (len(d), d))]


def _area_of(args):
    P, w, node_cap, len_cap_factor = args
    return area_search(P, w, node_cap=node_cap, len_cap_factor=len_cap_factor)


def dehn_function(P: Presentation, n: int, *, node_cap: int = DEFAULT_NODE_CAP,
                  len_cap_factor: int = DEFAULT_LEN_CAP_FACTOR,
                  jobs: int = 1) -> DehnResult:
    """max Area(w) over null-homotopic |w| <= n, by exhaustive enumeration.

    Exact only when every inner search came back exact; any exhaustion
    demotes the result to a lower bound.  Enumeration cost is exponential
    in n -- this is a desk instrument for single digits.
    """
    if P.evaluation is None:
        raise ValueError("dehn_function needs an evaluation oracle")
    words = _null_classes(P, n)
    value, exact, witness = 0, True, None
    tasks = [(P, w, node_cap, len_cap_factor) for w in words]
    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_area_of, tasks, chunksize=8))
    else:
        results = [_area_of(t) for t in tasks]
    for w, res in zip(words, results):
        if res.status == "exact":
            if res.area > value:
                value, witness = res.area, w
        else:
            exact = False
            if res.lower_bound is not None and res.lower_bound > value:
                value, witness = res.lower_bound, w
    return DehnResult(n, value, exact, witness, len(words))
