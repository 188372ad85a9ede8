"""Command-line interface.

Six subcommands: ``classify-quartic`` and ``classify-hyp`` classify a
single curve at one prime; ``analyze`` classifies a quartic at every odd
prime dividing its discriminant; ``enumerate-graphs`` prints the
decorated-graph catalog; ``oracle-check`` cross-validates the valuation
classifier against the branch-data oracle on a fixture file; ``batch``
streams a CSV of curves.

All coefficient intake is exact: integers or ``num/den`` strings (floats
are rejected).  With ``--json`` each record is emitted as one JSON object
per line; residues are integers in ``[0, p)``, polynomials are ascending
coefficient lists, and valuations are exact fraction strings (``"inf"``
for the valuation of zero).

Exit codes: 0 success, 1 invalid input (``SingularCurve``, ``EvenPrime``,
``ParseError``), 2 unmatched valuation profile.
"""

from __future__ import annotations

import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

import click

from .classify import ClassificationResult, UnmatchedProfile, classify
from .graphs import (
    GRAPH_IDS,
    GRAPH_TYPE_BY_ID,
    REPRESENTATIVES,
    admissible_cover,
    edge_labels,
    stabilize,
)
from .hyperelliptic import HypCianiModel, classify_hyp_model, l_valuation_profile
from .oracle import RationalBranchData, oracle_classify
from .quartic import CianiQuartic, SingularCurve, valuation_profile
from .valuations import INF, EvenPrime, ValuedContext, odd_bad_primes

__all__ = ["main", "ParseError"]

_QUARTIC_KEYS = ("I3", "I3p", "I3pp", "I6", "I")
_HYP_KEYS = ("L1", "L2", "L3")


class ParseError(ValueError):
    """Command-line value is not an exact rational in the expected shape."""


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ParseError(
            f"coefficient {text!r} is not exact: floats are rejected, "
            "use an integer or num/den"
        )
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse {text!r} as a rational") from exc


def _parse_coeffs(text: str, count: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != count:
        raise ParseError(
            f"expected {count} comma-separated coefficients, got {len(parts)}"
        )
    return tuple(_parse_rational(p) for p in parts)


def _val_str(v) -> str:
    return "inf" if v == INF else str(Fraction(v))


def _record(
    label: Optional[str],
    prime: int,
    result: ClassificationResult,
    kind: str,
) -> dict:
    """One ReportRecord: a flat, schema-stable dict."""
    prof = result.profile
    keys = _HYP_KEYS if kind == "hyperelliptic" else _QUARTIC_KEYS
    if kind == "hyperelliptic":
        raw = prof.raw
        normalized = prof.triple()
    else:
        raw = prof.raw
        normalized = prof.tuple5()
    components = result.components.to_dict()
    warnings = list(components.pop("warnings", []))
    return {
        "label": label,
        "prime": prime,
        "kind": kind,
        "case_id": result.case_id,
        "reduction_type": result.type_token,
        "graph_type": result.graph,
        "hyperelliptic_reduction": result.hyperelliptic_reduction,
        "shift": _val_str(prof.shift),
        "raw_valuations": {k: _val_str(v) for k, v in zip(keys, raw)},
        "normalized_valuations": {
            k: _val_str(v) for k, v in zip(keys, normalized)
        },
        "components": components,
        "warnings": warnings,
    }


def _error_record(label: Optional[str], prime: Optional[int], exc: Exception) -> dict:
    return {
        "label": label,
        "prime": prime,
        "error": type(exc).__name__,
        "message": str(exc),
    }


def _print_human(rec: dict) -> None:
    if "error" in rec:
        where = f"{rec['label'] or '-'} p={rec['prime'] or '-'}"
        click.echo(f"{where}: error {rec['error']}: {rec['message']}")
        return
    head = (
        f"{rec['label'] or '-'}  p={rec['prime']}  {rec['case_id']}  "
        f"{rec['reduction_type']}  graph {rec['graph_type']}  "
        f"shift {rec['shift']}"
    )
    if rec["hyperelliptic_reduction"] and rec["kind"] == "quartic":
        head += "  [hyperelliptic reduction]"
    click.echo(head)
    keys = _HYP_KEYS if rec["kind"] == "hyperelliptic" else _QUARTIC_KEYS
    raw = ", ".join(rec["raw_valuations"][k] for k in keys)
    nrm = ", ".join(rec["normalized_valuations"][k] for k in keys)
    head_raw = f"raw nu({', '.join(keys)})"
    click.echo(f"  {head_raw} = ({raw})")
    click.echo(f"  {'normalized':<{len(head_raw)}} = ({nrm})")
    comp = rec["components"]
    if comp.get("kind", "none") != "none":
        parts = [f"{k}={v}" for k, v in comp.items() if k != "kind"]
        click.echo(f"  {comp['kind']}: {'; '.join(parts) or '-'}")
    for w in rec["warnings"]:
        click.echo(f"  warning: {w}")


def _emit(records: Sequence[dict], as_json: bool) -> None:
    for rec in records:
        if as_json:
            click.echo(json.dumps(rec, sort_keys=True))
        else:
            _print_human(rec)


def _fail(exc: Exception) -> None:
    """Exit 1 with a one-line message naming the violated precondition."""
    click.echo(f"{type(exc).__name__}: {exc}", err=True)
    sys.exit(1)


def _classify_quartic_once(
    coeffs: Sequence[Fraction], prime: int, label: Optional[str]
) -> dict:
    q = CianiQuartic(*coeffs)
    ctx = ValuedContext(prime)
    result = classify(valuation_profile(q, ctx))
    return _record(label, prime, result, "quartic")


@click.group()
def main() -> None:
    """Stable reduction types of Ciani quartics and their hyperelliptic
    degenerations, from exact p-adic valuations."""


@main.command("classify-quartic")
@click.option("--coeffs", required=True, help="A,B,C,a,b,c (exact rationals)")
@click.option("--prime", required=True, type=int, help="odd prime p")
@click.option("--label", default=None, help="optional curve label")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def classify_quartic_cmd(coeffs: str, prime: int, label: Optional[str], as_json: bool) -> None:
    """Classify one Ciani quartic at one odd prime."""
    try:
        parsed = _parse_coeffs(coeffs, 6)
        rec = _classify_quartic_once(parsed, prime, label)
    except (ParseError, SingularCurve, EvenPrime) as exc:
        _fail(exc)
        return
    except UnmatchedProfile as exc:
        click.echo(f"UnmatchedProfile: {exc}", err=True)
        sys.exit(2)
    _emit([rec], as_json)


@main.command("analyze")
@click.option("--coeffs", required=True, help="A,B,C,a,b,c (exact rationals)")
@click.option("--label", default=None, help="optional curve label")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def analyze_cmd(coeffs: str, label: Optional[str], as_json: bool) -> None:
    """Classify a quartic at every odd prime dividing its discriminant."""
    try:
        parsed = _parse_coeffs(coeffs, 6)
        q = CianiQuartic(*parsed)
        from .quartic import invariants as _invariants

        primes = [p for p, _ in odd_bad_primes(_invariants(q).delta_Y)]
    except (ParseError, SingularCurve, EvenPrime) as exc:
        _fail(exc)
        return
    records = []
    unmatched = False
    for p in primes:
        try:
            records.append(_classify_quartic_once(parsed, p, label))
        except UnmatchedProfile as exc:
            unmatched = True
            records.append(_error_record(label, p, exc))
    _emit(records, as_json)
    if not primes and not as_json:
        click.echo("no odd bad primes")
    sys.exit(2 if unmatched else 0)


@main.command("classify-hyp")
@click.option("--m", "--M", "m_", required=True, help="coefficient M (exact rational)")
@click.option("--n", "--N", "n_", required=True, help="coefficient N (exact rational)")
@click.option("--prime", required=True, type=int, help="odd prime p")
@click.option("--label", default=None, help="optional curve label")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def classify_hyp_cmd(
    m_: str, n_: str, prime: int, label: Optional[str], as_json: bool
) -> None:
    """Classify one hyperelliptic model y^2 = x^8+Mx^6+Nx^4+Mx^2+1."""
    try:
        model = HypCianiModel(_parse_rational(m_), _parse_rational(n_))
        ctx = ValuedContext(prime)
        result = classify_hyp_model(model, ctx)
        rec = _record(label, prime, result, "hyperelliptic")
    except (ParseError, SingularCurve, EvenPrime) as exc:
        _fail(exc)
        return
    except UnmatchedProfile as exc:
        click.echo(f"UnmatchedProfile: {exc}", err=True)
        sys.exit(2)
    _emit([rec], as_json)


@main.command("enumerate-graphs")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def enumerate_graphs_cmd(as_json: bool) -> None:
    """Print the 20 decorated graphs with their 13 stable type names."""
    records = []
    for gid in GRAPH_IDS:
        tree = REPRESENTATIVES[gid]
        stable = stabilize(admissible_cover(edge_labels(tree)))
        records.append(
            {
                "graph": gid,
                "reduction_type": GRAPH_TYPE_BY_ID[gid].token,
                "marks": [list(m) for m in tree.marks],
                "tree_edges": [list(e) for e in tree.edges],
                "stable_genera": list(stable.genera),
                "stable_edges": [list(e) for e in stable.edges],
            }
        )
    names = {r["reduction_type"] for r in records}
    if as_json:
        for rec in records:
            click.echo(json.dumps(rec, sort_keys=True))
    else:
        for rec in records:
            marks = " ".join(
                "{" + ",".join(map(str, m)) + "}" for m in rec["marks"]
            )
            click.echo(
                f"{rec['graph']:<6} {rec['reduction_type']:<18} "
                f"marks {marks:<30} genera {rec['stable_genera']}"
            )
        click.echo(f"{len(records)} graphs, {len(names)} distinct type names")


@main.command("oracle-check")
@click.option(
    "--fixture",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON fixture file: a list of {label, coeffs, roots?} objects",
)
@click.option("--prime", required=True, type=int, help="odd prime p")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def oracle_check_cmd(fixture: str, prime: int, as_json: bool) -> None:
    """Cross-validate the valuation classifier against the branch-data
    oracle; exits 1 if any fixture disagrees."""
    try:
        with open(fixture, encoding="utf-8") as fh:
            entries = json.load(fh)
        if not isinstance(entries, list):
            raise ParseError("fixture file must contain a JSON list")
        ctx = ValuedContext(prime)
    except (ParseError, EvenPrime, json.JSONDecodeError) as exc:
        _fail(exc)
        return
    disagreements = 0
    records = []
    for entry in entries:
        label = entry.get("label")
        try:
            coeffs = tuple(_parse_rational(str(c)) for c in entry["coeffs"])
            if len(coeffs) != 6:
                raise ParseError("coeffs must have 6 entries")
            q = CianiQuartic(*coeffs)
            if "roots" in entry:
                roots = [_parse_rational(str(r)) for r in entry["roots"]]
                data = RationalBranchData(q, *roots)
            else:
                data = RationalBranchData.from_quartic(q)
            claimed = classify(valuation_profile(q, ctx))
            observed = oracle_classify(data, ctx)
            agree = observed == claimed.graph
            disagreements += 0 if agree else 1
            records.append(
                {
                    "label": label,
                    "prime": prime,
                    "classifier_graph": claimed.graph,
                    "classifier_case": claimed.case_id,
                    "oracle_graph": observed,
                    "agree": agree,
                }
            )
        except Exception as exc:  # noqa: BLE001 - per-fixture isolation
            records.append(_error_record(label, prime, exc))
            disagreements += 1
    if as_json:
        for rec in records:
            click.echo(json.dumps(rec, sort_keys=True))
    else:
        for rec in records:
            if "error" in rec:
                click.echo(
                    f"{rec['label'] or '-'}: error {rec['error']}: {rec['message']}"
                )
            else:
                verdict = "ok" if rec["agree"] else "DISAGREE"
                click.echo(
                    f"{rec['label'] or '-'}  classifier {rec['classifier_graph']}"
                    f" ({rec['classifier_case']})  oracle {rec['oracle_graph']}"
                    f"  {verdict}"
                )
        click.echo(f"{len(records)} fixtures, {disagreements} disagreements")
    sys.exit(1 if disagreements else 0)


@main.command("batch")
@click.option(
    "--csv",
    "csv_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="CSV rows: label,A,B,C,a,b,c (quartic) or label,M,N (hyperelliptic)",
)
@click.option("--prime", default=None, type=int, help="classify at one odd prime")
@click.option(
    "--all-odd",
    "all_odd",
    is_flag=True,
    help="classify at every odd prime dividing the discriminant",
)
@click.option("--header", is_flag=True, help="skip the first CSV line")
@click.option("--json", "as_json", is_flag=True, help="JSON-lines output")
def batch_cmd(
    csv_path: str,
    prime: Optional[int],
    all_odd: bool,
    header: bool,
    as_json: bool,
) -> None:
    """Classify every CSV row; row-level errors are recorded, not fatal."""
    if (prime is None) == (not all_odd):
        _fail(ParseError("exactly one of --prime and --all-odd is required"))
        return
    if prime is not None:
        try:
            ValuedContext(prime)
        except EvenPrime as exc:
            _fail(exc)
            return
    records: list[dict] = []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if header:
        rows = rows[1:]
    for row in rows:
        if not row or all(not cell.strip() for cell in row):
            continue
        label = row[0].strip() or None
        try:
            if len(row) == 7:
                coeffs = tuple(_parse_rational(c) for c in row[1:])
                q = CianiQuartic(*coeffs)
                if all_odd:
                    from .quartic import invariants as _invariants

                    primes = [p for p, _ in odd_bad_primes(_invariants(q).delta_Y)]
                else:
                    primes = [prime]
                for p in primes:
                    try:
                        records.append(_classify_quartic_once(coeffs, p, label))
                    except (UnmatchedProfile, Exception) as exc:  # noqa: BLE001
                        records.append(_error_record(label, p, exc))
            elif len(row) == 3:
                model = HypCianiModel(
                    _parse_rational(row[1]), _parse_rational(row[2])
                )
                if all_odd:
                    from .hyperelliptic import l_invariants as _l_invariants

                    primes = [
                        p
                        for p, _ in odd_bad_primes(_l_invariants(model).delta_Y)
                    ]
                else:
                    primes = [prime]
                for p in primes:
                    try:
                        result = classify_hyp_model(model, ValuedContext(p))
                        records.append(_record(label, p, result, "hyperelliptic"))
                    except (UnmatchedProfile, Exception) as exc:  # noqa: BLE001
                        records.append(_error_record(label, p, exc))
            else:
                raise ParseError(
                    f"row for {label!r} has {len(row)} fields; expected 7 or 3"
                )
        except Exception as exc:  # noqa: BLE001 - row isolation
            records.append(_error_record(label, None, exc))
    _emit(records, as_json)


if __name__ == "__main__":
    main()
