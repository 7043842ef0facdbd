import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import click

from hopf import __version__
from hopf.categorical import (
    consistency_harness,
    coradical,
    epi_test_alg,
    epi_test_hopf,
    faithful_coflatness_test,
    faithful_flatness_test,
    mono_test_coalg,
    mono_test_hopf,
    scorad_check,
)
from hopf.convolution import NoAntipode, NoSkewAntipode, antipode_report, antipode_solve, skew_antipode
from hopf.errors import HopfError, InvalidParameters
from hopf.examples import CappedMonoid, CorpusEntry, corpus_entry, make_example, morphism_corpus, parse_example
from hopf.fileformat import load, load_morphism, save, save_morphism
from hopf.free import (
    TruncatedBialgebra,
    antipode_image_dims,
    free_bialgebra,
    free_hopf_on_bialgebra,
    free_hopf_on_coalgebra,
    k_star,
    unit_arrow_report,
)
from hopf.linalg import Matrix
from hopf.scalars import FieldSpec
from hopf.structures import (
    AnyObject,
    Bialgebra,
    HopfAlgebra,
    LinearMap,
    bialgebra_of,
    check,
    check_morphism,
    level_of,
)
from hopf.verdicts import CheckResult
from workbench.config import get_settings
from workbench.models import Report

log = logging.getLogger(__name__)

EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


# ---------------------------------------------------------------- inputs

def resolve(text: str, field: FieldSpec) -> Any:
    """``example:name[:params]``, ``corpus:name`` or a file path."""
    if text.startswith("example:"):
        return make_example(parse_example(text[len("example:"):]), field)
    if text.startswith("corpus:"):
        return corpus_entry(text[len("corpus:"):], field)
    path = Path(text)
    if not path.exists():
        raise InvalidParameters(f"no such file: {text}")
    return load(path)


def resolve_object(text: str, field: FieldSpec) -> Any:
    x = resolve(text, field)
    if isinstance(x, (LinearMap, CorpusEntry)):
        raise InvalidParameters(f"{text} is a morphism; this command needs an object")
    return x


def resolve_morphism(text: str, field: FieldSpec) -> Tuple[LinearMap, str]:
    if text.startswith("corpus:"):
        entry = corpus_entry(text[len("corpus:"):], field)
        return entry.morphism, entry.level
    if text.startswith("example:"):
        raise InvalidParameters("examples are objects; use corpus:<name> or a morphism file")
    return load_morphism(text)


def resolve_hopf(text: str, field: FieldSpec) -> HopfAlgebra:
    x = resolve_object(text, field)
    if isinstance(x, HopfAlgebra):
        return x if x.antipode is not None else x.with_antipode(_solve_or_fail(x))
    if isinstance(x, Bialgebra):
        return HopfAlgebra(x, _solve_or_fail(x))
    raise InvalidParameters(f"{text} is a {level_of(x)}, a Hopf algebra is needed")


def _solve_or_fail(b: Any) -> Matrix:
    solved = antipode_solve(b)
    if isinstance(solved, NoAntipode):
        raise InvalidParameters(f"no antipode: {solved.detail}")
    return solved


# ---------------------------------------------------------------- reports

def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_format_value(v) for v in value)
    if value is None:
        return "none"
    return str(value)


def emit(report: Report, mode: str) -> None:
    if mode == "machine":
        click.echo(f"command={report.command}")
        click.echo(f"status={report.status}")
        if report.message:
            click.echo(f"message={report.message}")
        for key, value in report.fields.items():
            click.echo(f"{key}={_format_value(value)}")
        return
    icon = {"yes": "✅", "ok": "✅", "no": "❌", "inconclusive": "⚠️", "error": "❌"}[report.status]
    click.echo(f"{icon} {report.command}: {report.status}" + (f" - {report.message}" if report.message else ""))
    for key, value in report.fields.items():
        click.echo(f"   {key:<16}: {_format_value(value)}")


def verdict_report(command: str, result: CheckResult, **fields: Any) -> Report:
    data: Dict[str, Any] = dict(fields)
    if result.witness is not None:
        data["witness"] = result.witness
    if result.certificate is not None:
        data["certificate"] = result.certificate
    return Report(command=command, status=result.verdict, message=result.detail, fields=data)


def _matrix_rows(field: FieldSpec, m: Matrix) -> List[str]:
    return [" ".join(field.format_scalar(c) for c in row) for row in m.entries]


def command(fn: Callable[..., Report]) -> Callable[..., None]:
    """Shared --field/--report flags, error mapping and exit codes."""

    @click.option("--field", "field_text", default=None, help="q (rationals) or p:<prime>; default HOPF_FIELD.")
    @click.option("--report", "mode", type=click.Choice(["text", "machine"]), default="text", show_default=True)
    @click.pass_context
    @functools.wraps(fn)
    def wrapper(ctx: click.Context, field_text: str, mode: str, **kwargs: Any) -> None:
        try:
            field = FieldSpec.parse(field_text or get_settings().field)
            report = fn(field=field, **kwargs)
        except HopfError as e:
            log.debug("command failed", exc_info=True)
            click.echo(f"❌ {e}", err=True)
            ctx.exit(EXIT_ERROR)
            return
        emit(report, mode)
        if report.status == "inconclusive":
            ctx.exit(EXIT_INCONCLUSIVE)

    return wrapper


@click.group()
@click.version_option(version=__version__, prog_name="hopf-lab")
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Exact Hopf-algebra workbench: antipodes, categorical tests and free constructions"""
    try:
        settings = get_settings()
    except HopfError as e:
        click.echo(f"❌ {e}", err=True)
        ctx.exit(EXIT_ERROR)
        return
    level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(message)s")


# ---------------------------------------------------------------- objects and antipodes

@cli.command("check")
@click.argument("source")
@command
def check_cmd(source: str, field: FieldSpec) -> Report:
    """Check an object (or morphism) against the axioms of its level"""
    if source.startswith("corpus:") or _is_morphism_file(source):
        f, level = resolve_morphism(source, field)
        return verdict_report("check", check_morphism(f, level), level=level)
    x = resolve_object(source, field)
    target = x.coalgebra if isinstance(x, CappedMonoid) else x
    return verdict_report("check", check(target), level=level_of(target), dim=target.dim)


def _is_morphism_file(text: str) -> bool:
    path = Path(text)
    if not path.is_file():
        return False
    try:
        return json.loads(path.read_text(encoding="utf-8")).get("kind") == "morphism"
    except (ValueError, AttributeError):
        return False


@cli.command("antipode")
@click.argument("source")
@click.option("--max-order", type=int, default=None, help="Antipode order cap; default HOPF_MAX_ORDER.")
@command
def antipode_cmd(source: str, max_order: int, field: FieldSpec) -> Report:
    """Solve for the antipode as the convolution inverse of id"""
    x = resolve_object(source, field)
    solved = antipode_solve(bialgebra_of(x))
    if isinstance(solved, NoAntipode):
        return Report(command="antipode", status="no", message=f"NoAntipode: {solved.detail}",
                      fields={"witness": solved.witness})
    h = HopfAlgebra(bialgebra_of(x), solved)
    summary = antipode_report(h, max_order)
    return Report(command="antipode", status="yes", message="antipode found", fields={
        "order": summary.order if summary.order is not None else f">{summary.max_order}",
        "bijective": summary.bijective,
        "image_dim": summary.image_dim,
        "antipode": _matrix_rows(field, solved),
    })


@cli.command("skew")
@click.argument("source")
@command
def skew_cmd(source: str, field: FieldSpec) -> Report:
    """Solve for the skew antipode (antipode of H^cop)"""
    h = resolve_hopf(source, field)
    found = skew_antipode(h)
    if isinstance(found, NoSkewAntipode):
        return Report(command="skew", status="no", message=found.detail, fields={"witness": "H^cop"})
    return Report(command="skew", status="yes", message="skew antipode equals S^-1",
                  fields={"skew_antipode": _matrix_rows(field, found)})


# ---------------------------------------------------------------- categorical tests

@cli.command("epi")
@click.argument("morphism")
@command
def epi_cmd(morphism: str, field: FieldSpec) -> Report:
    """Decide whether a morphism is an epimorphism of algebras"""
    f, level = resolve_morphism(morphism, field)
    result = epi_test_hopf(f) if level == "hopf" else epi_test_alg(f)
    return verdict_report("epi", result, level=level)


@cli.command("mono")
@click.argument("morphism")
@command
def mono_cmd(morphism: str, field: FieldSpec) -> Report:
    """Decide whether a morphism is a monomorphism of coalgebras"""
    f, level = resolve_morphism(morphism, field)
    result = mono_test_hopf(f) if level == "hopf" else mono_test_coalg(f)
    return verdict_report("mono", result, level=level)


@cli.command("coradical")
@click.argument("source")
@command
def coradical_cmd(source: str, field: FieldSpec) -> Report:
    """Compute the coradical H_0 (trace-form radical of the dual algebra)"""
    x = resolve_object(source, field)
    space = coradical(x)
    return Report(command="coradical", status="ok", message=f"dim H_0 = {space.dim}", fields={
        "dim": space.dim,
        "ambient_dim": x.dim,
        "basis": [" ".join(field.format_scalar(c) for c in col) for col in space.basis.columns()],
    })


@cli.command("scorad")
@click.argument("source")
@command
def scorad_cmd(source: str, field: FieldSpec) -> Report:
    """Check that H_0 inside S(H) forces S to be surjective"""
    result = scorad_check(resolve_hopf(source, field))
    return verdict_report("scorad", result)


@cli.command("flat")
@click.argument("morphism")
@click.option("--seed", type=int, default=0, show_default=True)
@command
def flat_cmd(morphism: str, seed: int, field: FieldSpec) -> Report:
    """Test whether an algebra inclusion makes B free over A"""
    f, _ = resolve_morphism(morphism, field)
    return verdict_report("flat", faithful_flatness_test(f, seed), seed=seed)


@cli.command("coflat")
@click.argument("morphism")
@click.option("--seed", type=int, default=0, show_default=True)
@command
def coflat_cmd(morphism: str, seed: int, field: FieldSpec) -> Report:
    """Test faithful coflatness of a coalgebra surjection through its dual"""
    f, _ = resolve_morphism(morphism, field)
    return verdict_report("coflat", faithful_coflatness_test(f, seed), seed=seed)


@cli.command("harness")
@click.option("--seed", type=int, default=0, show_default=True)
@command
def harness_cmd(seed: int, field: FieldSpec) -> Report:
    """Run the epi/flat and mono/coflat consistency harness over the morphism corpus"""
    report = consistency_harness(field=field, seed=seed)
    fields: Dict[str, Any] = {"entries": len(report.rows), "inconclusive": report.inconclusive}
    for row in report.rows:
        fields[row.name] = f"epi={row.epi} flat={row.flat} mono={row.mono} coflat={row.coflat} bijective={row.bijective}"
    return Report(command="harness", status="ok", message="no violations", fields=fields)


# ---------------------------------------------------------------- free constructions

def truncation_report(name: str, t: TruncatedBialgebra) -> Report:
    fields: Dict[str, Any] = {"dims": list(t.dims)}
    fields.update(t.metadata())
    if t.degree >= 1:
        arrow = unit_arrow_report(t)
        fields["unit_arrow_injective"] = arrow.injective_on_base
        fields["unit_arrow_image_dim"] = arrow.image_dim
        if arrow.witness is not None:
            fields["unit_arrow_kernel"] = arrow.witness
    return Report(command=name, status="ok", message=f"dims {', '.join(map(str, t.dims))}", fields=fields)


def _degree_options(fn: Callable) -> Callable:
    fn = click.option("--slack", type=int, default=2, show_default=True)(fn)
    return click.option("--degree", type=int, default=2, show_default=True)(fn)


@cli.command("free-bialg")
@click.argument("source")
@click.option("--degree", type=int, default=2, show_default=True)
@command
def free_bialg_cmd(source: str, degree: int, field: FieldSpec) -> Report:
    """Truncated free bialgebra (tensor algebra) on a coalgebra"""
    return truncation_report("free-bialg", free_bialgebra(_as_coalgebra(resolve_object(source, field)), degree))


def _as_coalgebra(x: Any) -> AnyObject:
    return x.coalgebra if isinstance(x, CappedMonoid) else x


@cli.command("free-hopf")
@click.argument("source")
@_degree_options
@command
def free_hopf_cmd(source: str, degree: int, slack: int, field: FieldSpec) -> Report:
    """Truncated free Hopf algebra H(C) on a coalgebra"""
    t = free_hopf_on_coalgebra(_as_coalgebra(resolve_object(source, field)), degree, slack)
    return truncation_report("free-hopf", t)


@cli.command("free-hopf-bialg")
@click.argument("source")
@_degree_options
@command
def free_hopf_bialg_cmd(source: str, degree: int, slack: int, field: FieldSpec) -> Report:
    """Truncated free Hopf algebra H*(B) on a bialgebra (or a capped N-monoid)"""
    t = free_hopf_on_bialgebra(resolve_object(source, field), degree, slack)
    return truncation_report("free-hopf-bialg", t)


@cli.command("kstar")
@click.argument("source")
@_degree_options
@command
def kstar_cmd(source: str, degree: int, slack: int, field: FieldSpec) -> Report:
    """Truncated enveloping Hopf algebra with bijective antipode, (H*(H^op))^op"""
    return truncation_report("kstar", k_star(resolve_hopf(source, field), degree, slack))


@cli.command("image-dims")
@click.argument("source")
@_degree_options
@click.option("--construction", type=click.Choice(["free-hopf", "free-hopf-bialg", "kstar"]),
              default="free-hopf", show_default=True)
@command
def image_dims_cmd(source: str, degree: int, slack: int, construction: str, field: FieldSpec) -> Report:
    """Per-level dimension of the antipode image on a truncation"""
    x = resolve_object(source, field)
    if construction == "free-hopf":
        t = free_hopf_on_coalgebra(_as_coalgebra(x), degree, slack)
    elif construction == "free-hopf-bialg":
        t = free_hopf_on_bialgebra(x, degree, slack)
    else:
        t = k_star(resolve_hopf(source, field), degree, slack)
    fields: Dict[str, Any] = {"dims": list(t.dims), "stable": t.stable}
    for row in antipode_image_dims(t):
        fields[f"level_{row.level}"] = f"full={row.full_dim} image={row.image_dim} undefined={row.undefined}"
    return Report(command="image-dims", status="ok", fields=fields)


# ---------------------------------------------------------------- files and corpus

@cli.command("export")
@click.argument("source")
@click.argument("output", type=click.Path(dir_okay=False))
@command
def export_cmd(source: str, output: str, field: FieldSpec) -> Report:
    """Write an example object or corpus morphism to a file"""
    out = Path(output)
    if source.startswith("corpus:"):
        f, level = resolve_morphism(source, field)
        src, tgt = out.with_suffix(".source.json"), out.with_suffix(".target.json")
        save(f.source, src)
        save(f.target, tgt)
        save_morphism(f, level, out, src.name, tgt.name)
        return Report(command="export", status="ok", message=f"wrote {out}", fields={"files": [str(src), str(tgt)]})
    x = _as_coalgebra(resolve_object(source, field))
    save(x, out)
    return Report(command="export", status="ok", message=f"wrote {out}", fields={"level": level_of(x)})


@cli.command("corpus")
@command
def corpus_cmd(field: FieldSpec) -> Report:
    """List the named morphisms of the corpus"""
    entries = morphism_corpus(field)
    return Report(command="corpus", status="ok", message=f"{len(entries)} morphisms",
                  fields={e.name: e.level for e in entries})


if __name__ == "__main__":
    cli()
