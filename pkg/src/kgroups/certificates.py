"""Certified area lower bounds for commutator test words.

The pipeline ties the other modules into verifiable inequality chains:

* build the test words ``[w_n, (y2 x2)^n]`` over a combined alphabet and
  check the hypotheses they must satisfy (evaluation, commutation);
* split a word over the three kernel symbols into its two coordinate
  words and verify the substitution identity componentwise;
* convert any kernel word representing ``h_n`` into a null expression
  for ``[x^n, y^n]`` by deleting its commutator symbols — the bridge
  from area facts to subgroup distance bounds;
* brute-force the amalgam inequality ``Area >= 2n * d(1, h)`` on a toy
  scenario whose hypotheses are all machine-checked.

Nothing here claims an asymptotic statement as a computed fact; each
report carries only per-instance certificates, each naming its verifier
and the hash of its inputs, so the output bytes are reproducible.
"""

from __future__ import annotations

import hashlib
import json
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .words import (FreeGroup, Word, commutator, inv, mul, parse_word,
                    to_text)
from .kernels import (GenWord, GeneratingSet, KernelGroup, ProductElement,
                      identity_element, rewrite_in_generators,
                      standard_generators)
from .metrics import _ball_search, distance, h_family
from .presentations import (DEFAULT_NODE_CAP, AreaResult, Evaluation,
                            NullExpression, Presentation, area_search,
                            verify_null_expression)


class CertificateError(RuntimeError):
    """A sub-verification failed; the message names the component."""


class BudgetError(CertificateError):
    """A verifier ran out of search budget before reaching a verdict.

    Distinct from CertificateError so callers can tell "don't know"
    apart from "checked and false".
    """


def _sha256_of(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _evidence(verifier: str, inputs: dict, status: str, details: dict) -> dict:
    return {
        "verifier": verifier,
        "inputs": inputs,
        "inputs_sha256": _sha256_of({"verifier": verifier, "inputs": inputs}),
        "status": status,
        "details": details,
    }


def pair_presentation() -> Presentation:
    """``< x, y | [x,y] >`` with its free-abelian evaluation oracle."""
    return Presentation(("x", "y"), ("[x,y]",),
                        Evaluation([(1, 0), (0, 1)]))


# -- test words ---------------------------------------------------------------

def test_word(w: Word, u: Word, v: Word, n: int) -> Word:
    """The literal commutator ``w (uv)^n w^-1 (uv)^-n``, freely reduced."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if u.group != w.group or v.group != w.group:
        raise ValueError("w, u, v must share one combined alphabet")
    return commutator(w, mul(u, v) ** n)


test_word.__test__ = False  # keep pytest from collecting the constructor


_COMBINED_NAMES = ("x_diag", "y1", "y2", "x1", "x2", "y_diag")


def combined_alphabet() -> Tuple[FreeGroup, Evaluation]:
    """Six symbols mapping onto a product of two rank-2 free groups.

    The first three generate the same subgroup as ``{x_diag, y1, y2}``
    realized as (x, x^-1), (y, 1), (1, y); the last three realize
    (x, 1), (1, x), (y, y^-1).  Together they generate the full product.
    """
    F = FreeGroup(6, names=_COMBINED_NAMES)
    free = FreeGroup(2)
    x, y, one = free.gen(1), free.gen(2), free.identity
    ev = Evaluation([
        ProductElement((x, inv(x))),   # x_diag
        ProductElement((y, one)),      # y1
        ProductElement((one, y)),      # y2
        ProductElement((x, one)),      # x1
        ProductElement((one, x)),      # x2
        ProductElement((y, inv(y))),   # y_diag
    ])
    return F, ev


def distortion_test_words(n: int) -> Tuple[Word, Word, Evaluation]:
    """``w_n = [x_diag^n, y1^n]`` and its test word ``[w_n, (y2 x2)^n]``.

    ``w_n`` evaluates to the distortion element ``h_n``; the test word
    commutes it against a word whose evaluation commutes with ``h_n``
    letterwise, which is what makes the area bound bite.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    F, ev = combined_alphabet()
    xd, y1 = F.gen(1), F.gen(2)
    y2, x2 = F.gen(3), F.gen(5)
    w_n = commutator(xd ** n, y1 ** n)
    tword = test_word(w_n, y2, x2, n)
    return w_n, tword, ev


def letter_length(w: Word, ev: Evaluation) -> int:
    """Length of ``w`` after expanding each symbol to its realization."""
    if ev.kind != "product":
        raise ValueError("letter_length needs a product evaluation")
    return sum(ev.images[j - 1].total_length() for j, _ in w.letters)


# -- substitution and deletion ------------------------------------------------

def _split_images(gens: GeneratingSet):
    group = gens.group
    if (group.n, group.m, group.r) != (2, 2, 2) or not group.is_standard:
        raise ValueError("expected the standard two-factor rank-2 full kernel")
    if tuple(gens.symbols) != ("a1_2", "a2_2", "c1_2"):
        raise ValueError("expected the three standard kernel symbols")
    free = group.factor_group()
    x, y = free.gen(1), free.gen(2)
    first = {"a1_2": x, "a2_2": y, "c1_2": commutator(x, y)}
    second = {"a1_2": inv(x), "a2_2": inv(y), "c1_2": free.identity}
    return free, first, second


def substitution_split(w: GenWord) -> Tuple[Word, Word]:
    """Coordinate words of a word over the three kernel symbols.

    Substituting (x, y, [x,y]) for the symbols gives the first
    coordinate, substituting (x^-1, y^-1, nothing) the second; the pair
    is verified against the direct evaluation before being returned.
    """
    free, first, second = _split_images(w.gens)
    w1 = free.identity
    w2 = free.identity
    for name, sign in w.syms:
        w1 = mul(w1, first[name] if sign == 1 else inv(first[name]))
        w2 = mul(w2, second[name] if sign == 1 else inv(second[name]))
    if ProductElement((w1, w2)) != w.eval():
        raise CertificateError(
            "substitution-split: coordinate words disagree with evaluation")
    return w1, w2


def derive_null_expression(w: GenWord, n: int) -> NullExpression:
    """Null expression for ``[x^n, y^n]`` read off a kernel word for h_n.

    Every occurrence of the commutator symbol in the first coordinate
    word becomes one conjugated relator, conjugated by the full prefix
    before it; deleting them leaves a word that is trivial because the
    second coordinate is.  With full prefixes the product telescopes in
    descending occurrence order, so items are emitted last-to-first.
    The expression verifies over ``pair_presentation`` and its area is
    exactly the number of commutator-symbol occurrences.
    """
    target = h_family(n, w.gens.group)
    if w.eval() != target:
        raise ValueError("word does not evaluate to h_%d" % n)
    free, first, _ = _split_images(w.gens)
    prefix = free.identity
    records: List[Tuple[Word, int]] = []
    for name, sign in w.syms:
        if name == "c1_2":
            records.append((prefix, sign))
        img = first[name]
        prefix = mul(prefix, img if sign == 1 else inv(img))
    expr = NullExpression([(conj, 0, sign) for conj, sign in reversed(records)])
    P = pair_presentation()
    if not verify_null_expression(P, target.factors[0], expr):
        raise CertificateError(
            "commutator-deletion: derived expression failed verification")
    return expr


# -- toy amalgam --------------------------------------------------------------

class AmalgamScenario:
    """Two vertex groups glued along a cyclic edge subgroup, with checks.

    The presentation's alphabet splits into two vertex-side letter sets
    and the edge letters; every edge letter carries one relator writing
    it as a word over each side.  The distinguished words w, u live on
    the first side, v on the second; h is the evaluation of w and must
    lie in the edge subgroup, while u and v must evaluate outside it and
    commute with h.
    """

    def __init__(self, presentation: Presentation, side1: Sequence[str],
                 side2: Sequence[str], edge: Sequence[str],
                 w: Word, u: Word, v: Word, edge_generator: str):
        self.presentation = presentation
        self.side1 = tuple(side1)
        self.side2 = tuple(side2)
        self.edge = tuple(edge)
        self.w = w
        self.u = u
        self.v = v
        self.edge_generator = edge_generator
        ev = presentation.evaluation
        if ev is None or ev.kind != "product":
            raise ValueError("scenario needs a faithful product evaluation")
        self.edge_element = self._eval(parse_word(presentation.group,
                                                  edge_generator))
        self.h = self._eval(w)

    def _eval(self, word: Word) -> ProductElement:
        return self.presentation.evaluation.eval_word(word)

    def subgroup_power(self, g: ProductElement) -> Optional[int]:
        """The j with g = edge^j, or None when g is outside the edge group."""
        if not g:
            return 0
        le = self.edge_element.total_length()
        lg = g.total_length()
        if le == 0 or lg % le != 0:
            return None
        j = lg // le
        for sign in (1, -1):
            acc = identity_element(g.n, g.m)
            step = self.edge_element if sign == 1 else ~self.edge_element
            for _ in range(j):
                acc = acc * step
            if acc == g:
                return sign * j
        return None

    def _side_of(self, name: str) -> str:
        if name in self.side1:
            return "1"
        if name in self.side2:
            return "2"
        if name in self.edge:
            return "e"
        raise ValueError(f"symbol {name!r} belongs to no side")

    def _word_sides(self, word: Word) -> set:
        names = self.presentation.group.names
        return {self._side_of(names[j - 1]) for j, _ in word.letters}

    def validate(self) -> None:
        """Check every structural hypothesis; raise naming the first failure."""
        names = self.presentation.group.names
        if set(self.side1) | set(self.side2) | set(self.edge) != set(names) or \
                len(self.side1) + len(self.side2) + len(self.edge) != len(names):
            raise ValueError("sides and edge must partition the alphabet")
        covered: Dict[str, set] = {b: set() for b in self.edge}
        for rel in self.presentation.relators:
            sides = self._word_sides(rel)
            if sides <= {"1"} or sides <= {"2"}:
                continue  # a vertex relator
            first_j, first_s = rel.letters[0]
            bname = names[first_j - 1]
            rest = {self._side_of(names[j - 1]) for j, _ in rel.letters[1:]}
            if bname not in self.edge or first_s != 1 or len(rest) != 1 or \
                    rest <= {"e"}:
                raise ValueError(
                    f"relator {to_text(rel)} is neither vertex-sided nor"
                    " edge-letter times an inverse one-side word")
            covered[bname].add(rest.pop())
        for b, sides in covered.items():
            if sides != {"1", "2"}:
                raise ValueError(f"edge letter {b!r} needs a defining relator"
                                 " over each side")
        if not self._word_sides(self.w) <= {"1"}:
            raise ValueError("w must be a word over the first side")
        if not self._word_sides(self.u) <= {"1"}:
            raise ValueError("u must be a word over the first side")
        if not self._word_sides(self.v) <= {"2"}:
            raise ValueError("v must be a word over the second side")
        if self.subgroup_power(self.h) is None:
            raise ValueError("w must evaluate into the edge subgroup")
        for label, word in (("u", self.u), ("v", self.v)):
            g = self._eval(word)
            if self.subgroup_power(g) is not None:
                raise ValueError(f"{label} must evaluate outside the edge"
                                 " subgroup")
            if g * self.h != self.h * g:
                raise ValueError(f"{label} must commute with h")


def toy_scenario(k: int = 1) -> AmalgamScenario:
    """Two commuting-pair vertex groups glued along ``s = a^-1 c = b^-1 d``.

    The evaluation realizes the glued group inside a product of two
    rank-2 free groups; the second factor only ever uses its first
    letter, so it plays the role of an infinite cyclic coordinate and
    injectivity is unaffected.  ``w = (a^-1 c)^k`` evaluates to the k-th
    power of the edge generator, and ``u = a``, ``v = b`` commute with it.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    free = FreeGroup(2)
    x, y, one = free.gen(1), free.gen(2), free.identity
    t = free.gen(1)
    ev = Evaluation([
        ProductElement((x, one)),  # a
        ProductElement((x, t)),    # c
        ProductElement((y, one)),  # b
        ProductElement((y, t)),    # d
        ProductElement((one, t)),  # s
    ])
    P = Presentation(("a", "c", "b", "d", "s"),
                     ("[a,c]", "[b,d]", "s c^-1 a", "s d^-1 b"), ev)
    w = parse_word(P.group, "(a^-1 c)^%d" % k)
    u = parse_word(P.group, "a")
    v = parse_word(P.group, "b")
    return AmalgamScenario(P, ("a", "c"), ("b", "d"), ("s",), w, u, v, "s")


class ToyAmalgamReport(NamedTuple):
    k: int
    n: int
    word: str
    word_length: int
    d_value: int
    required: int
    area: AreaResult
    status: str  # verified-exact | verified-bound | inconclusive | refuted

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "word": self.word,
            "word_length": self.word_length,
            "subgroup_distance": self.d_value,
            "required_bound": self.required,
            "search": self.area.to_json(),
            "status": self.status,
        }


def toy_amalgam_check(k: int, n: int, *, node_cap: int = DEFAULT_NODE_CAP,
                      push_cap: Optional[int] = None,
                      exact_attempt: bool = False) -> ToyAmalgamReport:
    """Brute-force the inequality Area >= 2n * d(1, h) on the toy scenario.

    By default the search runs in certificate mode: it stops as soon as
    every state cheaper than the required bound is settled, which proves
    the inequality without finding the exact area.  ``exact_attempt``
    removes the stop and lets the search run to its caps.  Exhaustion
    below the bound is reported as inconclusive — a budget statement,
    never a refutation.
    """
    scen = toy_scenario(k)
    scen.validate()
    tword = test_word(scen.w, scen.u, scen.v, n)

    ident = identity_element(2, 2)
    moves = [scen.edge_element, ~scen.edge_element]
    _, hit, _ = _ball_search(ident, moves, k + 1, scen.h.key())
    assert hit is not None, "edge power must be reachable"
    required = 2 * n * hit

    res = area_search(scen.presentation, tword, node_cap=node_cap,
                      push_cap=push_cap,
                      stop_at_bound=None if exact_attempt else required)
    if res.status == "exact":
        status = "verified-exact" if res.area >= required else "refuted"
    elif res.lower_bound is not None and res.lower_bound >= required:
        status = "verified-bound"
    else:
        status = "inconclusive"
    return ToyAmalgamReport(k, n, to_text(tword), len(tword.data), hit,
                            required, res, status)


# -- the full report ----------------------------------------------------------

class CertificateReport:
    """Inequality chain for one n, assembled from named verifiers.

    ``to_bytes`` is canonical JSON: running the same configuration twice
    yields identical bytes.
    """

    def __init__(self, n: int, test_word_text: str, symbol_length: int,
                 letter_length: int, distance_bound: int, area_bound: int,
                 evidence: List[dict]):
        self.n = n
        self.test_word_text = test_word_text
        self.symbol_length = symbol_length
        self.letter_length = letter_length
        self.distance_bound = distance_bound
        self.area_bound = area_bound
        self.evidence = evidence

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "test_word": self.test_word_text,
            "test_word_symbols": self.symbol_length,
            "test_word_letters": self.letter_length,
            "subgroup_distance_bound": self.distance_bound,
            "area_bound": self.area_bound,
            "conclusion": (
                "the test word has area at least %d over any presentation"
                " extending the kernel generators; the bound grows like"
                " 2n * n^2, cubically in the word length, which is linear"
                " in n" % self.area_bound),
            "evidence": self.evidence,
        }

    def to_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, indent=2).encode(
            "utf-8") + b"\n"


def lower_bound_report(n: int, *, node_cap: int = DEFAULT_NODE_CAP
                       ) -> CertificateReport:
    """Assemble the certified chain for one n; raise on any red verifier.

    The chain: the test word's hypotheses hold; a kernel word for h_n
    splits and deletes into a verified null expression; the minimal area
    of [x^n, y^n] is exactly n^2; therefore every kernel word for h_n
    carries at least n^2 commutator symbols and the subgroup distance is
    at least n^2, giving the area bound 2n * n^2 for the test word.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    evidence: List[dict] = []
    group = KernelGroup(2, 2, 2)
    h = h_family(n, group)

    # test word construction and hypotheses
    w_n, tword, ev = distortion_test_words(n)
    if ev.eval_word(w_n) != h:
        raise CertificateError("test-word-hypotheses: w_n does not evaluate"
                               " to h_%d" % n)
    for sym_index, sym_name in ((3, "y2"), (5, "x2")):
        g = ev.images[sym_index - 1]
        if g * h != h * g:
            raise CertificateError(
                f"test-word-hypotheses: h_{n} fails to commute with"
                f" {sym_name}")
    sym_len = len(tword.data)
    let_len = letter_length(tword, ev)
    evidence.append(_evidence(
        "test-word-hypotheses",
        {"n": n, "w_n": to_text(w_n), "test_word": to_text(tword)},
        "verified",
        {"evaluates_to_h_n": True, "commutes_with": ["y2", "x2"],
         "symbol_length": sym_len, "letter_length": let_len}))

    # substitution identity on a concrete kernel word
    wB = rewrite_in_generators(group, h)
    w1, w2 = substitution_split(wB)
    evidence.append(_evidence(
        "substitution-split",
        {"word": wB.to_text()},
        "verified",
        {"first_coordinate": to_text(w1), "second_coordinate": to_text(w2),
         "componentwise_equal": True}))

    # deletion certificate
    expr = derive_null_expression(wB, n)
    evidence.append(_evidence(
        "commutator-deletion",
        {"word": wB.to_text(), "n": n},
        "verified",
        {"expression_area": expr.area,
         "commutator_occurrences": sum(1 for name, _ in wB.syms
                                       if name == "c1_2")}))

    # area fact
    P = pair_presentation()
    target = parse_word(P.group, "[x^%d, y^%d]" % (n, n))
    res = area_search(P, target, node_cap=node_cap)
    if res.status != "exact":
        raise BudgetError(
            "area-fact: search exhausted before settling [x^%d, y^%d]"
            % (n, n))
    if res.area != n * n:
        raise CertificateError(
            "area-fact: minimal area %d does not match n^2" % res.area)
    evidence.append(_evidence(
        "area-fact",
        {"presentation": P.to_text(), "word": to_text(target),
         "node_cap": node_cap},
        "verified",
        {"area": res.area, "unconditional": res.unconditional,
         "witness": res.witness.to_json()}))

    # direct ball-search evidence where feasible
    if n <= 2:
        gens = standard_generators(group)
        radius = 1 if n == 1 else n * n
        d_res = distance(gens, h, radius)
        if n == 1:
            if not (d_res.found and d_res.value == 1):
                raise CertificateError("subgroup-distance: h_1 must be one"
                                       " generator away")
            detail = {"distance": 1}
        else:
            if d_res.found and d_res.value < n * n:
                raise CertificateError(
                    "subgroup-distance: found h_%d below the deletion bound"
                    % n)
            detail = ({"distance": d_res.value} if d_res.found else
                      {"certificate": "distance > %d" % d_res.radius,
                       "ball_size": d_res.explored})
        evidence.append(_evidence(
            "subgroup-distance",
            {"n": n, "radius": radius},
            "verified", detail))

    d_bound = n * n
    evidence.append(_evidence(
        "distance-inference",
        {"n": n},
        "verified",
        {"statement": (
            "every word over the kernel symbols evaluating to h_%d yields,"
            " by deletion, a null expression whose area equals its"
            " commutator-symbol count; the minimal area is %d, so the word"
            " has at least %d symbols and the subgroup distance is at least"
            " %d" % (n, n * n, n * n, n * n))}))

    bound = 2 * n * d_bound
    return CertificateReport(n, to_text(tword), sym_len, let_len, d_bound,
                             bound, evidence)
