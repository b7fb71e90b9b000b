"""Command-line driver for the kernel-subgroup toolkit.

Each subcommand delegates to exactly one library operation and prints a
machine-readable report on standard output.  One exit-code contract
holds everywhere: 0 means verified success, 1 means verification
failure or bad input, 2 means a search budget ran out before a verdict.
"Don't know" and "no" are deliberately different codes — the reports
feed experiment logs, and conflating them would corrupt the record.

Output bytes are a function of the flags and inputs alone; rerunning a
command reproduces its output exactly.  The ``--seed`` flag is recorded
for provenance but nothing samples today: every subcommand here is
deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .words import WordParseError, to_text
from .abelian import FactorHom, ab_image, normalize_basis
from .kernels import (KernelGroup, ProductElement, contains,
                      rewrite_in_generators, standard_generators, theta)
from .splitting import SplittingData, reassemble, syllable_form
from .presentations import (DEFAULT_NODE_CAP, Evaluation, Presentation,
                            area_search, dehn_function, parse_presentation)
from .metrics import ambient_length, distance, distortion_table, h_family
from .certificates import (BudgetError, CertificateError, lower_bound_report,
                           toy_amalgam_check)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2


class RunConfig(NamedTuple):
    """Reproducibility knobs shared by the subcommands."""

    seed: int
    node_cap: int
    len_cap_factor: int
    radius: int
    jobs: int
    format: Optional[str]


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(args.seed, args.node_cap, args.len_cap_factor,
                    args.radius, args.jobs, args.format)
    if cfg.node_cap < 1 or cfg.len_cap_factor < 1 or cfg.jobs < 1:
        raise ValueError("budgets must be positive")
    if cfg.radius < 0:
        raise ValueError("radius must be nonnegative")
    return cfg


class _ArgParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; our contract reserves 2."""

    def error(self, message):
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


_GROUP_RE = re.compile(r"^K(\d+)_(\d+)_(\d+)$")
_H_RE = re.compile(r"^h\((\d+)\)$")


def _parse_group(text: str) -> KernelGroup:
    m = _GROUP_RE.match(text.strip())
    if not m:
        raise ValueError(f"group descriptor {text!r} is not of the form"
                         " K<n>_<m>_<r>")
    return KernelGroup(*(int(g) for g in m.groups()))


def _parse_element(G: KernelGroup, text: str) -> ProductElement:
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != G.n:
        raise ValueError(f"expected {G.n} factor words separated by ';',"
                         f" got {len(parts)}")
    return G.element(parts)


def _parse_rows(text: str) -> FactorHom:
    rows = []
    for part in text.split(";"):
        entries = part.replace(",", " ").split()
        if not entries:
            raise ValueError("empty matrix row")
        rows.append([int(v) for v in entries])
    if len({len(r) for r in rows}) != 1:
        raise ValueError("matrix rows must all have the same length")
    return FactorHom(len(rows), len(rows[0]), rows)


# -- output -------------------------------------------------------------------

Rows = Tuple[Sequence[str], List[Sequence[object]]]


def _cell(value) -> str:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return str(value)
    return json.dumps(value, sort_keys=True)


def _render(payload: dict, fmt: str, rows: Optional[Rows] = None) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows is not None:
            header, data = rows
            writer.writerow(header)
            writer.writerows(data)
        else:
            keys = sorted(payload)
            writer.writerow(keys)
            writer.writerow([_cell(payload[k]) for k in keys])
        return buf.getvalue()
    if rows is not None:
        header, data = rows
        table = [list(map(_cell, header))] + [list(map(_cell, r)) for r in data]
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        return "".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            + "\n" for row in table)
    return "".join(f"{k} = {_cell(v)}\n" for k, v in payload.items())


class _Outcome(NamedTuple):
    payload: dict
    code: int
    rows: Optional[Rows] = None
    default_format: str = "table"


# -- subcommands --------------------------------------------------------------

def cmd_member(args, cfg: RunConfig) -> _Outcome:
    G = _parse_group(args.group)
    g = _parse_element(G, args.element)
    vec = theta(G, g)
    member = vec == (0,) * G.r
    payload = {"group": repr(G), "element": repr(g),
               "abelian_image": list(vec), "member": member}
    return _Outcome(payload, EXIT_OK if member else EXIT_FAIL)


def cmd_rewrite(args, cfg: RunConfig) -> _Outcome:
    G = _parse_group(args.group)
    g = _parse_element(G, args.element)
    if not contains(G, g):
        raise ValueError("element is not in the kernel; nothing to rewrite")
    w = rewrite_in_generators(G, g)
    round_trip = w.eval() == g
    payload = {"group": repr(G), "element": repr(g), "word": w.to_text(),
               "symbols": len(w), "round_trip": round_trip}
    return _Outcome(payload, EXIT_OK if round_trip else EXIT_FAIL)


def cmd_normalize_basis(args, cfg: RunConfig) -> _Outcome:
    h = _parse_rows(args.rows)
    change = normalize_basis(h)
    ok = True
    for i, w in enumerate(change.new_basis, start=1):
        want = tuple(1 if i == c + 1 else 0 for c in range(h.target_rank))
        ok = ok and ab_image(h, w) == (want if i <= h.target_rank
                                       else (0,) * h.target_rank)
    payload = {"rows": [list(r) for r in h.images],
               "new_basis": [to_text(w) for w in change.new_basis],
               "inverse_basis": [to_text(w) for w in change.inverse_basis],
               "moves": len(change.moves), "verified": ok}
    return _Outcome(payload, EXIT_OK if ok else EXIT_FAIL)


def cmd_split(args, cfg: RunConfig) -> _Outcome:
    G = _parse_group(args.group)
    if G.r != G.m:
        raise ValueError("splitting needs the full kernel, r = m")
    D = SplittingData(G.n, G.m)
    g = _parse_element(G, args.element)
    form = syllable_form(D, g)
    hat = "".join(
        f"{D.hat_group.names[k - 1]}^{e} " for k, e in form.blocks).strip()
    ok = reassemble(D, form.m_part,
                    D.hat_group.word(hat or "1")) == g
    payload = {"group": repr(G), "element": repr(g),
               "m_part": [to_text(w) for w in form.m_part.factors],
               "blocks": [[k, e] for k, e in form.blocks],
               "reassembled": ok}
    return _Outcome(payload, EXIT_OK if ok else EXIT_FAIL)


def cmd_area(args, cfg: RunConfig) -> _Outcome:
    P = parse_presentation(args.presentation)
    w = P.word(args.word)
    res = area_search(P, w, node_cap=cfg.node_cap,
                      len_cap_factor=cfg.len_cap_factor)
    payload = {"presentation": P.to_text(), "word": to_text(w)}
    payload.update(res.to_json())
    if res.status == "exact":
        code = EXIT_OK
    elif res.regime_empty:
        code = EXIT_FAIL  # proven impossible: the word is not null-homotopic
    else:
        code = EXIT_INCONCLUSIVE
    return _Outcome(payload, code)


def cmd_dehn(args, cfg: RunConfig) -> _Outcome:
    P = parse_presentation(args.presentation)
    if args.abelian:
        rank = P.group.rank
        ev = Evaluation([tuple(1 if c == j else 0 for c in range(rank))
                         for j in range(rank)])
        P = Presentation(P.group.names, P.relators, ev)
    res = dehn_function(P, args.n, node_cap=cfg.node_cap,
                        len_cap_factor=cfg.len_cap_factor, jobs=cfg.jobs)
    payload = {"presentation": P.to_text()}
    payload.update(res.to_json())
    return _Outcome(payload, EXIT_OK if res.exact else EXIT_INCONCLUSIVE)


def cmd_metric(args, cfg: RunConfig) -> _Outcome:
    G = _parse_group(args.group)
    gens = standard_generators(G)
    m = _H_RE.match(args.target.strip())
    if m:
        g = h_family(int(m.group(1)), G)
    else:
        g = _parse_element(G, args.target)
        if not contains(G, g):
            raise ValueError("target is outside the subgroup; no distance")
    res = distance(gens, g, cfg.radius)
    payload = {"group": repr(G), "target": repr(g),
               "ambient_length": ambient_length(g), "radius": cfg.radius,
               "explored": res.explored}
    if res.found:
        payload["distance"] = res.value
        return _Outcome(payload, EXIT_OK)
    payload["certificate"] = f"distance > {res.radius}"
    return _Outcome(payload, EXIT_INCONCLUSIVE)


def cmd_distortion(args, cfg: RunConfig) -> _Outcome:
    rows = distortion_table(range(1, args.n_max + 1), cfg.radius)
    header = ("n", "ambient_length", "status", "value")
    data = [list(r) for r in rows]
    payload = {"rows": [dict(zip(header, r)) for r in data]}
    return _Outcome(payload, EXIT_OK, rows=(header, data))


def cmd_certify(args, cfg: RunConfig) -> _Outcome:
    rep = lower_bound_report(args.n, node_cap=cfg.node_cap)
    return _Outcome(rep.to_json(), EXIT_OK, default_format="json")


def cmd_toy_amalgam(args, cfg: RunConfig) -> _Outcome:
    rep = toy_amalgam_check(args.k, args.n, node_cap=cfg.node_cap,
                            exact_attempt=args.exact_attempt)
    codes = {"verified-exact": EXIT_OK, "verified-bound": EXIT_OK,
             "inconclusive": EXIT_INCONCLUSIVE, "refuted": EXIT_FAIL}
    return _Outcome(rep.to_json(), codes[rep.status], default_format="json")


# -- wiring -------------------------------------------------------------------

def build_parser() -> _ArgParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="recorded for provenance; current subcommands"
                             " are deterministic")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP,
                        help="search node budget")
    common.add_argument("--len-cap-factor", type=int, default=4,
                        help="intermediate words may exceed the input by this"
                             " many relator lengths")
    common.add_argument("--radius", type=int, default=6,
                        help="ball radius for subgroup-metric searches")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for embarrassingly parallel"
                             " searches")
    common.add_argument("--format", choices=("table", "csv", "json"),
                        default=None, help="output format (default: table,"
                        " except certify/toy-amalgam which default to json)")

    parser = _ArgParser(prog="kgroups",
                        description="kernel subgroups of products of free"
                                    " groups: membership, rewriting, area"
                                    " search, metrics, certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[common],
                       help="decide membership in the kernel")
    p.add_argument("--group", required=True, help="descriptor K<n>_<m>_<r>")
    p.add_argument("--element", required=True,
                   help="factor words separated by ';'")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("rewrite", parents=[common],
                       help="rewrite a kernel element over the standard"
                            " generators")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("normalize-basis", parents=[common],
                       help="find a basis on which a map to Z^r is standard")
    p.add_argument("--rows", required=True,
                   help="generator images, rows separated by ';'")
    p.set_defaults(func=cmd_normalize_basis)

    p = sub.add_parser("split", parents=[common],
                       help="semidirect decomposition along the last factor")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("area", parents=[common],
                       help="minimal-area null expression for a word")
    p.add_argument("--presentation", required=True,
                   help='e.g. "< x, y | [x,y] >"')
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("dehn", parents=[common],
                       help="max area over null-homotopic words of bounded"
                            " length")
    p.add_argument("--presentation", required=True)
    p.add_argument("--n", type=int, required=True, help="word-length bound")
    p.add_argument("--abelian", action="store_true",
                   help="use the free-abelian quotient as the null-homotopy"
                        " oracle (valid when the relators are exactly the"
                        " commutators)")
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("metric", parents=[common],
                       help="word metric on the subgroup via ball search")
    p.add_argument("--group", required=True)
    p.add_argument("--target", required=True,
                   help="factor words separated by ';', or h(<n>)")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("distortion", parents=[common],
                       help="distance vs ambient length for the h(n) family")
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser("certify", parents=[common],
                       help="certified area lower bound for the n-th test"
                            " word")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("toy-amalgam", parents=[common],
                       help="check Area >= 2n*d on the glued toy group")
    p.add_argument("--k", type=int, default=1, help="power of the edge"
                                                    " generator")
    p.add_argument("--n", type=int, default=1, help="commuting power in the"
                                                    " test word")
    p.add_argument("--exact-attempt", action="store_true",
                   help="run the search to its caps instead of stopping at"
                        " the certified bound")
    p.set_defaults(func=cmd_toy_amalgam)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        out = args.func(args, cfg)
    except BudgetError as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (WordParseError, ValueError, CertificateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    fmt = cfg.format or out.default_format
    sys.stdout.write(_render(out.payload, fmt, out.rows))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
