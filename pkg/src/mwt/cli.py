"""mwt: evaluate expressions, print GW/W tables and run verification suites.

Exit codes: 0 success (suite passed), 1 suite failure or evaluation error,
2 usage error.
"""

from __future__ import annotations

import json
import sys

import click

from .fields import FieldError, field_of_order, format_element
from .gw import GWElement, WittElement, describe_gw, format_gw, n_epsilon, witt_project
from .parse import EvalError, ParseError, eval_expr
from .suites import REGISTRY, SuiteError, list_suites, run_suite


def _emit(obj, pretty: bool):
    if pretty:
        click.echo(_pretty(obj))
    else:
        click.echo(json.dumps(obj, sort_keys=False))


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(v) if isinstance(v, (dict, list)) else v}" for v in obj)
    return f"{pad}{obj}"


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Grothendieck-Witt rings, Milnor-Witt K-theory and transfers over finite fields."""


@main.command("eval")
@click.argument("expr", nargs=-1, required=True)
@click.option("--pretty", is_flag=True, help="Human-readable output instead of JSON.")
def eval_cmd(expr, pretty):
    """Evaluate an expression, e.g. 'transfer(geo, GF(9)/GF(3) by t^2+1, gw<1>)'."""
    src = " ".join(expr)
    try:
        out = eval_expr(src)
    except ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        sys.exit(2)
    except EvalError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    _emit({"expr": src, **out}, pretty)


@main.command("suite")
@click.argument("name")
@click.option("--q", type=int, default=None, help="Field order.")
@click.option("--max-degree", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None, help="64-bit seed (default 1).")
@click.option("--mode", type=click.Choice(["bt", "geo"]), default=None)
@click.option("--variant", type=click.Choice(["stated", "corrected"]), default=None, help="lam-formulas only.")
@click.option("--degrees", default=None, help="Comma-separated degrees (kato-morel).")
@click.option("--no-timing", is_flag=True, help="Report elapsed_ms as 0 (byte-identical reruns).")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Also write the JSON report to this file.")
@click.option("--pretty", is_flag=True)
def suite_cmd(name, q, max_degree, samples, seed, mode, variant, degrees, no_timing, output, pretty):
    """Run a named verification suite and print its JSON report."""
    given = {"q": q, "max_degree": max_degree, "samples": samples, "seed": seed, "mode": mode,
             "variant": variant, "degrees": degrees}
    if name in REGISTRY:
        allowed = set(REGISTRY[name].defaults) | {"seed"}
        bad = [k for k, v in given.items() if v is not None and k not in allowed]
        if bad:
            click.echo(f"usage error: {name} does not take {', '.join('--' + b.replace('_', '-') for b in bad)}",
                       err=True)
            sys.exit(2)
    params = {k: v for k, v in given.items() if v is not None}
    try:
        report = run_suite(name, params, timing=not no_timing)
    except SuiteError as e:
        click.echo(f"usage error: {e}", err=True)
        sys.exit(2)
    if output:
        with open(output, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    _emit(report, pretty)
    sys.exit(0 if report["pass"] else 1)


@main.command("table")
@click.argument("kind", type=click.Choice(["gw", "witt"]))
@click.option("--q", type=int, required=True, help="Field order.")
@click.option("--pretty", is_flag=True)
def table_cmd(kind, q, pretty):
    """Structure tables of GW(F_q) or W(F_q)."""
    try:
        F = field_of_order(q)
    except FieldError as e:
        click.echo(f"usage error: {e}", err=True)
        sys.exit(2)
    _emit(gw_table(F) if kind == "gw" else witt_table(F), pretty)


def gw_table(F) -> dict:
    one, s = GWElement.one(F), GWElement.diagonal(F, [F.nonsquare])
    classes = {"square": [], "nonsquare": []}
    for u in sorted(F.units(), key=lambda a: a.key()):
        classes["square" if u.is_square() else "nonsquare"].append(format_element(u))
    gens = {"<1>": one, f"<{format_element(F.nonsquare)}>": s, "h": GWElement.hyperbolic(F)}
    products = {f"{a}*{b}": format_gw(x * y) for a, x in gens.items() for b, y in gens.items()}
    return {
        "field": str(F),
        "minus_one": "square" if F.minus_one_is_square() else "nonsquare",
        "square_classes": classes,
        "generators": {k: format_gw(v) for k, v in gens.items()},
        "products": products,
        "n_eps": {str(n): describe_gw(n_epsilon(F, n)) for n in range(1, 7)},
        "invariants": "rank and discriminant (plain product) classify GW(F_q)",
    }


def witt_table(F) -> dict:
    elems = [WittElement(F, dp, db) for dp in (0, 1) for db in (0, 1)]
    name = lambda w: f"({w.dim_parity},{'n' if w.disc_bit else 's'})"
    add = {f"{name(a)}+{name(b)}": name(a + b) for a in elems for b in elems}
    mul = {f"{name(a)}*{name(b)}": name(a * b) for a in elems for b in elems}
    return {
        "field": str(F),
        "elements": {name(w): format_gw(w.lift()) for w in elems},
        "order_of_<1>": WittElement(F, 1, 0).additive_order(),
        "addition": add,
        "multiplication": mul,
        "h_projects_to": name(witt_project(GWElement.hyperbolic(F))),
    }


@main.command("list-suites")
@click.option("--pretty", is_flag=True)
def list_cmd(pretty):
    """Registered verification suites."""
    _emit(list_suites(), pretty)


if __name__ == "__main__":  # pragma: no cover
    main()
