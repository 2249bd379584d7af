"""Command-line surface.

Verbs: ``dist``, ``modulus``, ``diagnose``, ``axioms``, ``gen``, ``converge``,
``matrix``.  Exit codes: 0 success, 2 input error, 3 enumeration budget
exceeded.  Numeric output uses 6 significant digits; report-producing verbs
render a matplotlib figure next to their delimited output unless ``--no-plot``
is given.
"""

from __future__ import annotations

import functools
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path as FilePath

import click
import numpy as np

from . import counterexamples, diagnostics
from .betweenness import betweenness_for_mode, check_axioms
from .graphs import DEFAULT_HORIZON, path_dist
from .io import load_path, load_squeeze_config, save_ordered_set
from .ordered import (BudgetExceededError, coupling_dist, mismatch_modulus,
                      pair_dist, tuple_dist)
from .paths import Path, modulus, skorohod_modulus, skorohod_modulus_witness
from .splittime import format_split


def fmt(x: float) -> str:
    return f"{x:.6g}"


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except BudgetExceededError as exc:
            click.echo(f"budget exceeded: {exc}", err=True)
            sys.exit(3)
        except BrokenPipeError:
            sys.exit(0)  # downstream closed the pipe (e.g. | head)
        except (ValueError, OSError, json.JSONDecodeError) as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(2)
    return wrapper


def _betweenness(mode: str, custom: str | None, paths: list[Path]):
    values = None
    if mode == "order":
        values = sorted({v for p in paths for v in p.values()
                         if not isinstance(v, tuple)})
    return betweenness_for_mode(mode, values=values, custom=custom)


def _family_files(directory: str) -> list[FilePath]:
    files = sorted(FilePath(directory).glob("*.json"),
                   key=lambda f: (_trailing_int(f.stem), f.name))
    if not files:
        raise ValueError(f"no .json path files in {directory}")
    return files


def _trailing_int(stem: str) -> int:
    m = re.search(r"(\d+)$", stem)
    return int(m.group(1)) if m else -1


@click.group()
def cli():
    """Skorohod-type distances between cadlag paths."""


@cli.command("dist")
@click.argument("file_a", type=click.Path(exists=True))
@click.argument("file_b", type=click.Path(exists=True))
@click.option("--mode", default="j1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--variant", default="tot", show_default=True,
              type=click.Choice(["part", "tot", "hausdorff"]))
@click.option("--eta", default=0.01, show_default=True, type=float)
@click.option("--horizon", default=DEFAULT_HORIZON, show_default=True, type=float)
@click.option("--config", default=None, type=click.Path(exists=True),
              help="Squeeze config JSON ({'phi': ..., 'dbar': ...}).")
@click.option("--custom", default=None, help="Registered interpolation name.")
@handle_errors
def dist_cmd(file_a, file_b, mode, variant, eta, horizon, config, custom):
    """Distance between two path files, with its sampling error bar."""
    p1, p2 = load_path(file_a), load_path(file_b)
    b = _betweenness(mode, custom, [p1, p2])
    cfg = load_squeeze_config(config)
    res = path_dist(p1, p2, b, cfg, eta, variant, horizon)
    click.echo(f"{fmt(res.value)} ± {fmt(res.error)}")
    if variant == "tot":
        click.echo(f"witness correspondence: {res.witness_size} pairs")


@cli.command("modulus")
@click.argument("file", type=click.Path(exists=True))
@click.option("--kind", default="skorohod", show_default=True,
              type=click.Choice(["classic", "skorohod"]))
@click.option("--mode", default="j1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--window", default=2.0, show_default=True, type=float)
@click.option("--deltas", default="0.5,0.25,0.125,0.0625", show_default=True)
@click.option("--witness", is_flag=True,
              help="Append the achieving split-time triple (skorohod kind).")
@click.option("--custom", default=None)
@handle_errors
def modulus_cmd(file, kind, mode, window, deltas, witness, custom):
    """Modulus of continuity of one path, as CSV rows delta,value."""
    p = load_path(file)
    ds = [float(d) for d in deltas.split(",")]
    b = _betweenness(mode, custom, [p])
    if witness and kind == "skorohod":
        click.echo("delta,value,tau1,tau2,tau3")
        for d in sorted(ds, reverse=True):
            v, taus = skorohod_modulus_witness(p, b, window, d)
            cols = [format_split(t) for t in taus] if taus else ["", "", ""]
            click.echo(",".join([fmt(d), fmt(v)] + cols))
        return
    click.echo("delta,value")
    for d in sorted(ds, reverse=True):
        v = modulus(p, window, d) if kind == "classic" else skorohod_modulus(p, b, window, d)
        click.echo(f"{fmt(d)},{fmt(v)}")


@cli.command("diagnose")
@click.argument("family_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--mode", default="j1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--kind", default="skorohod", show_default=True,
              type=click.Choice(["classic", "skorohod"]))
@click.option("--windows", default="1,2,5,20", show_default=True)
@click.option("--deltas", default=None,
              help="Comma-separated; default 1/2 .. 1/256.")
@click.option("--fixed-domain", is_flag=True,
              help="Add the boundary-oscillation condition (common interval).")
@click.option("--out", default=None, type=click.Path(),
              help="Write the report JSON here (plus a .png figure).")
@click.option("--no-plot", is_flag=True)
@click.option("--custom", default=None)
@handle_errors
def diagnose_cmd(family_dir, mode, kind, windows, deltas, fixed_domain, out,
                 no_plot, custom):
    """Compactness diagnostics for a directory of path files."""
    family = [load_path(f) for f in _family_files(family_dir)]
    b = _betweenness(mode, custom, family)
    ws = tuple(float(w) for w in windows.split(","))
    ds = diagnostics.DEFAULT_DELTAS if deltas is None else \
        tuple(float(d) for d in deltas.split(","))
    if fixed_domain:
        rep = diagnostics.diagnose_fixed_domain(family, b, ds, kind)
    else:
        rep = diagnostics.diagnose(family, b, ws, ds, kind)
    payload = rep.to_json()
    payload["mode"] = mode
    click.echo(f"verdict: {rep.verdict}")
    for note in rep.notes:
        click.echo(f"  {note}")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
        click.echo(f"wrote {out}")
        if not no_plot:
            from ._plot import save_curves_figure
            png = str(FilePath(out).with_suffix(".png"))
            save_curves_figure(rep.curves, png, title=f"{mode} modulus curves")
            click.echo(f"wrote {png}")


@cli.command("axioms")
@click.option("--mode", default="m1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--triples", default=200, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--dim", default=1, show_default=True, type=int)
@click.option("--custom", default=None)
@handle_errors
def axioms_cmd(mode, triples, seed, dim, custom):
    """Fuzz the betweenness axioms on random triples."""
    rng = np.random.default_rng(seed)
    if mode == "order":
        values = sorted(rng.uniform(-5, 5, size=32).tolist())
        b = betweenness_for_mode(mode, values=values)
        draws = [tuple(rng.choice(values, size=3)) for _ in range(triples)]
    else:
        b = betweenness_for_mode(mode, custom=custom)
        def draw():
            pt = rng.uniform(-5, 5, size=dim)
            return float(pt[0]) if dim == 1 else tuple(map(float, pt))
        draws = [(draw(), draw(), draw()) for _ in range(triples)]
    rep = check_axioms(b, draws)
    click.echo(f"checked {rep.checked} triples: {len(rep.violations)} violations")
    for v in rep.violations[:10]:
        click.echo(f"  axiom ({v.axiom}): {v.detail}")


@cli.command("gen")
@click.argument("kind", type=click.Choice(["noop", "diftop", "noncompl"]))
@click.option("--m", default=1, show_default=True, type=int)
@click.option("--eps", default=0.25, show_default=True, type=float)
@click.option("--n", default=8, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="Directory for the generated ordered-set JSON files.")
@handle_errors
def gen_cmd(kind, m, eps, n, out):
    """Generate a counterexample instance and print the verified inequalities."""
    outdir = FilePath(out) if out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)

    def emit(name, k):
        if outdir:
            save_ordered_set(k, outdir / f"{name}.json")

    if kind == "noop":
        k1, k2 = counterexamples.gen_order_gap(m, eps)
        emit("K1", k1)
        emit("K2", k2)
        dm = tuple_dist(k1, k2, m)
        dm1 = tuple_dist(k1, k2, m + 1)
        dp = pair_dist(k1, k2)
        dt, _ = coupling_dist(k1, k2)
        click.echo(f"order-{m} distance:   {fmt(dm)} (<= {fmt(eps)})")
        click.echo(f"order-{m + 1} distance:   {fmt(dm1)} (>= 0.5)")
        click.echo(f"pair distance {fmt(dp)} <= {fmt(2 * eps)} * coupling {fmt(dt)}: "
                   f"{dp <= 2 * eps * dt}")
    elif kind == "diftop":
        kn, k = counterexamples.gen_partial_order_gap(m, n)
        emit("Kn", kn)
        emit("K", k)
        d1 = tuple_dist(kn, k, m)
        d2 = tuple_dist(kn, k, m + 1)
        click.echo(f"order-{m} distance:   {fmt(d1)} (small)")
        click.echo(f"order-{m + 1} distance:   {fmt(d2)} (>= 0.5)")
    else:
        family = counterexamples.gen_escaping_cauchy([1.0 / i for i in range(2, n + 2)])
        for i, k in enumerate(family):
            emit(f"K{i + 2}", k)
        click.echo("pairwise coupling distances (Cauchy table):")
        header = "n\\m," + ",".join(str(i + 2) for i in range(len(family)))
        click.echo(header)
        for i, ki in enumerate(family):
            row = [str(i + 2)]
            for j, kj in enumerate(family):
                row.append(fmt(coupling_dist(ki, kj)[0]))
            click.echo(",".join(row))
        floors = [mismatch_modulus(k, 1.0 / (i + 2))
                  for i, k in enumerate(family)]
        click.echo("mismatch floors: " + ",".join(fmt(f) for f in floors))


@cli.command("converge")
@click.argument("sequence_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("limit_file", type=click.Path(exists=True))
@click.option("--mode", default="j1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--variant", default="tot", show_default=True,
              type=click.Choice(["part", "tot", "hausdorff"]))
@click.option("--n-list", default="4,16,64", show_default=True)
@click.option("--eta", default=0.01, show_default=True, type=float)
@click.option("--out", default=None, type=click.Path(),
              help="CSV output (plus a .png figure).")
@click.option("--no-plot", is_flag=True)
@click.option("--custom", default=None)
@handle_errors
def converge_cmd(sequence_dir, limit_file, mode, variant, n_list, eta, out,
                 no_plot, custom):
    """Distances of a file sequence to a limit path, as CSV rows n,distance."""
    limit = load_path(limit_file)
    ns = [int(x) for x in n_list.split(",")]
    files = {_trailing_int(f.stem): f for f in FilePath(sequence_dir).glob("*.json")}
    rows = []
    for n in ns:
        if n not in files:
            raise ValueError(f"no member file for n={n} in {sequence_dir}")
        p = load_path(files[n])
        b = _betweenness(mode, custom, [p, limit])
        res = path_dist(p, limit, b, eta=eta, variant=variant)
        rows.append((n, res.value))
    lines = ["n,distance"] + [f"{n},{fmt(v)}" for n, v in rows]
    text = "\n".join(lines)
    click.echo(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        if not no_plot:
            from ._plot import save_convergence_figure
            png = str(FilePath(out).with_suffix(".png"))
            save_convergence_figure(rows, png, title=f"{mode}/{variant} convergence")
            click.echo(f"wrote {png}")


@cli.command("matrix")
@click.argument("family_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--mode", default="j1", show_default=True,
              type=click.Choice(["j1", "m1", "order", "custom"]))
@click.option("--variant", default="tot", show_default=True,
              type=click.Choice(["part", "tot", "hausdorff"]))
@click.option("--eta", default=0.01, show_default=True, type=float)
@click.option("--jobs", default=4, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(),
              help="CSV output (plus a heatmap .png).")
@click.option("--no-plot", is_flag=True)
@click.option("--custom", default=None)
@handle_errors
def matrix_cmd(family_dir, mode, variant, eta, jobs, out, no_plot, custom):
    """Pairwise distance matrix over a directory of path files."""
    files = _family_files(family_dir)
    paths = [load_path(f) for f in files]
    b = _betweenness(mode, custom, paths)
    n = len(paths)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def entry(pair):
        i, j = pair
        return i, j, path_dist(paths[i], paths[j], b, eta=eta, variant=variant).value

    mat = np.zeros((n, n))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for i, j, v in pool.map(entry, pairs):
            mat[i, j] = mat[j, i] = v
    labels = [f.stem for f in files]
    lines = ["name," + ",".join(labels)]
    for i in range(n):
        lines.append(labels[i] + "," + ",".join(fmt(v) for v in mat[i]))
    text = "\n".join(lines)
    click.echo(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        if not no_plot:
            from ._plot import save_matrix_figure
            png = str(FilePath(out).with_suffix(".png"))
            save_matrix_figure(labels, mat, png)
            click.echo(f"wrote {png}")


def main():
    cli()


if __name__ == "__main__":
    main()
