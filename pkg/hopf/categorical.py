"""Epi/mono criteria, coradicals and faithful (co)flatness for finite-dimensional morphisms.

Every test returns a ``CheckResult``; a "no" carries a concrete witness. Only the
freeness search can come back "inconclusive".
"""
import itertools
import logging
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from hopf.errors import HopfError, InvalidParameters, ResourceBudgetExceeded, UnsupportedCharacteristic, \
    UnverifiedMorphism
from hopf.examples import CorpusEntry, morphism_corpus
from hopf.linalg import Matrix, Vector, in_span, kron, rank, rank_kernel_image, rref
from hopf.scalars import FieldSpec, Residue, Scalar
from hopf.structures import (
    AnyObject,
    Coalgebra,
    HopfAlgebra,
    LinearMap,
    algebra_of,
    coalgebra_of,
    dual,
    dual_map,
    is_algebra_morphism,
    is_coalgebra_morphism,
    is_hopf_morphism,
)
from hopf.verdicts import CheckResult
from workbench.config import get_settings

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 1 << 16
GROUPLIKE_MAX_DIM = 4


@dataclass(frozen=True)
class Subspace:
    ambient: AnyObject
    basis: Matrix

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, v: Sequence[Scalar]) -> bool:
        return in_span(self.basis, v)


class _SpanReducer:
    """Membership in a fixed span through its reduced row echelon form."""

    def __init__(self, field: FieldSpec, vectors: Sequence[Sequence[Scalar]], length: int) -> None:
        self.field = field
        self.rows, self.pivots = rref(field, vectors, length) if vectors else ([], [])

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def residual(self, v: Sequence[Scalar]) -> List[Scalar]:
        out = list(v)
        for row, c in zip(self.rows, self.pivots):
            a = out[c]
            if a:
                out = [x - a * y for x, y in zip(out, row)]
        return out

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self.residual(v))


def format_tensor(field: FieldSpec, v: Sequence[Scalar], left: Sequence[str], right: Sequence[str]) -> str:
    """Render a vector of V (x) W as ``1⊗g − g⊗1``."""
    terms = []
    for flat, c in enumerate(v):
        if not c:
            continue
        name = f"{left[flat // len(right)]}⊗{right[flat % len(right)]}"
        negative = field.characteristic == 0 and c < 0  # type: ignore[operator]
        magnitude = -c if negative else c
        coeff = "" if magnitude == field.one else f"{field.format_scalar(magnitude)}·"
        terms.append(("−" if negative else "+", coeff + name))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "−" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def _require(result: CheckResult, what: str) -> None:
    if not result.ok:
        log.error(f"❌ not a verified {what}: {result.detail}")
        raise UnverifiedMorphism(f"not a verified {what}: {result.detail}")


# ---------------------------------------------------------------- epi in Alg

@dataclass(frozen=True)
class RelativeTensorSquare:
    """B (x)_A B as (B (x) B) modulo span{b f(a) (x) b' - b (x) f(a) b'}."""

    morphism: LinearMap
    relations: _SpanReducer = dc_field(repr=False)
    left_map: Matrix = dc_field(repr=False)
    right_map: Matrix = dc_field(repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.left_map.rows

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.relations.rank

    def equal(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
        return self.relations.contains([x - y for x, y in zip(u, v)])


def relative_tensor_square(f: LinearMap) -> RelativeTensorSquare:
    a, b = algebra_of(f.source), algebra_of(f.target)
    nb = b.dim
    images = [f.matrix.column(j) for j in range(a.dim)]
    relations = []
    for i in range(nb):
        for fa in images:
            left = b.multiply(b.basis(i), fa)
            for k in range(nb):
                right = b.multiply(fa, b.basis(k))
                vec = [b.field.zero] * (nb * nb)
                for p, x in enumerate(left):
                    if x:
                        vec[p * nb + k] += x
                for q, y in enumerate(right):
                    if y:
                        vec[i * nb + q] -= y
                if any(vec):
                    relations.append(vec)
    unit = Matrix.from_columns(b.field, [b.unit], nb)
    ident = Matrix.identity(b.field, nb)
    return RelativeTensorSquare(
        morphism=f,
        relations=_SpanReducer(b.field, relations, nb * nb),
        left_map=kron(ident, unit),
        right_map=kron(unit, ident),
    )


def epi_test_alg(f: LinearMap) -> CheckResult:
    """f: A -> B is epi in Alg iff b (x)_A 1 = 1 (x)_A b for every b."""
    _require(is_algebra_morphism(f), "algebra morphism")
    square = relative_tensor_square(f)
    b = algebra_of(f.target)
    log.info(f"🔍 epi test: dim B⊗_A B = {square.dim}")
    for i in range(b.dim):
        one_b = square.right_map.column(i)
        b_one = square.left_map.column(i)
        if not square.equal(one_b, b_one):
            name = b.names[i]
            return CheckResult.no(f"not epi: dim B⊗_A B = {square.dim} > {b.dim}", f"1⊗{name} − {name}⊗1")
    return CheckResult.yes(f"epi: dim B⊗_A B = {square.dim}", certificate={"relative_tensor_dim": square.dim})


def epi_test_hopf(f: LinearMap) -> CheckResult:
    _require(is_hopf_morphism(f), "Hopf morphism")
    return epi_test_alg(f)


# ---------------------------------------------------------------- mono in CoAlg

@dataclass(frozen=True)
class CotensorSpace:
    """C box_D C inside C (x) C with the corestriction of Delta_C."""

    morphism: LinearMap
    basis: Matrix
    corestriction: Matrix

    @property
    def dim(self) -> int:
        return self.basis.cols


def cotensor_square(f: LinearMap) -> CotensorSpace:
    """Kernel of rho (x) id - id (x) lambda: C (x) C -> C (x) D (x) C."""
    c, d = coalgebra_of(f.source), coalgebra_of(f.target)
    nc, nd = c.dim, d.dim
    zero = c.field.zero
    rows = [[zero] * (nc * nc) for _ in range(nc * nd * nc)]
    for p in range(nc):
        for j, k, x in c.coproduct_basis(p):
            for e in range(nd):
                fk = f.matrix[e, k]
                if fk:
                    for q in range(nc):
                        rows[(j * nd + e) * nc + q][p * nc + q] += x * fk
    for q in range(nc):
        for j, k, x in c.coproduct_basis(q):
            for e in range(nd):
                fj = f.matrix[e, j]
                if fj:
                    for p in range(nc):
                        rows[(p * nd + e) * nc + k][p * nc + q] -= x * fj
    phi = Matrix(c.field, nc * nd * nc, nc * nc, tuple(tuple(r) for r in rows))
    kernel = rank_kernel_image(phi).kernel_basis
    return CotensorSpace(morphism=f, basis=kernel, corestriction=c.comult_matrix)


def mono_test_coalg(f: LinearMap) -> CheckResult:
    """f: C -> D is mono in CoAlg iff Delta_C maps C onto C box_D C."""
    _require(is_coalgebra_morphism(f), "coalgebra morphism")
    c = coalgebra_of(f.source)
    space = cotensor_square(f)
    log.info(f"🔍 mono test: dim C□_D C = {space.dim}, dim C = {c.dim}")
    if space.dim == c.dim and rank(space.corestriction) == c.dim:
        return CheckResult.yes(f"mono: Delta is a bijection onto C□_D C (dim {c.dim})",
                               certificate={"cotensor_dim": space.dim})
    for v in space.basis.columns():
        if not in_span(space.corestriction, v):
            return CheckResult.no(f"not mono: dim C□_D C = {space.dim} > {c.dim}",
                                  format_tensor(c.field, v, c.names, c.names))
    raise HopfError("cotensor square is larger than Delta(C) but no vector outside it was found")


def mono_test_hopf(f: LinearMap) -> CheckResult:
    _require(is_hopf_morphism(f), "Hopf morphism")
    return mono_test_coalg(f)


# ---------------------------------------------------------------- coradical

def coradical(c: AnyObject) -> Subspace:
    """H_0 as the annihilator of the trace-form radical of the dual algebra."""
    coalg = coalgebra_of(c)
    field = coalg.field
    p = field.characteristic
    if p and p <= coalg.dim:
        raise UnsupportedCharacteristic(
            f"coradical over F_{p} needs p > dim = {coalg.dim} for the trace-form radical")
    dual_alg = dual(coalg)
    n = coalg.dim
    traces = [field.zero] * n
    for m, i, k, x in dual_alg.mult.entries:  # type: ignore[union-attr]
        if i == k:
            traces[m] += x
    gram = [[field.zero] * n for _ in range(n)]
    for j, k, m, x in dual_alg.mult.entries:  # type: ignore[union-attr]
        if traces[m]:
            gram[j][k] += x * traces[m]
    radical = rank_kernel_image(Matrix(field, n, n, tuple(tuple(r) for r in gram))).kernel_basis
    if radical.cols == 0:
        basis = Matrix.identity(field, n)
    else:
        basis = rank_kernel_image(radical.transpose()).kernel_basis
    log.info(f"✅ coradical has dimension {basis.cols} of {n}")
    return Subspace(coalg, basis)


def scorad_check(h: HopfAlgebra) -> CheckResult:
    """H_0 in S(H) implies S surjective; reports both facts."""
    if h.antipode is None:
        raise InvalidParameters("scorad_check needs an attached antipode")
    h0 = coradical(h)
    image = rank_kernel_image(h.antipode).image_basis
    contained = all(in_span(image, v) for v in h0.basis.columns())
    surjective = image.cols == h.dim
    if contained and not surjective:
        raise HopfError("coradical inside S(H) but S is not surjective")
    detail = f"H_0 ⊆ S(H): {contained}; S surjective: {surjective}"
    return CheckResult.yes(detail, certificate={"contained": contained, "surjective": surjective,
                                                "coradical_dim": h0.dim})


# ---------------------------------------------------------------- faithful (co)flatness

def _module_hom_dim(f: LinearMap) -> int:
    """dim Hom_A(B, A) for B a left A-module through f."""
    a, b = algebra_of(f.source), algebra_of(f.target)
    na, nb = a.dim, b.dim
    field = a.field
    # unknown psi[r][k] (coordinate r of psi(e_k)) at r * nb + k
    rows = []
    for j in range(na):
        fa = f.matrix.column(j)
        for k in range(nb):
            moved = b.multiply(fa, b.basis(k))
            for r in range(na):
                row = [field.zero] * (na * nb)
                for q, y in enumerate(moved):
                    if y:
                        row[r * nb + q] += y
                for s in range(na):
                    for t, z in a._table.get((j, s), ()):
                        if t == r:
                            row[s * nb + k] -= z
                rows.append(row)
    m = Matrix(field, len(rows), na * nb, tuple(tuple(r) for r in rows))
    return na * nb - rank(m)


def _orbit_columns(f: LinearMap, generators: Sequence[Vector]) -> List[Vector]:
    b = algebra_of(f.target)
    return [b.multiply(f.matrix.column(j), g) for g in generators for j in range(f.source.dim)]


def _is_basis(field: FieldSpec, columns: Sequence[Vector], n: int) -> bool:
    return len(columns) == n and len(rref(field, columns, n)[1]) == n


def _random_scalar(rng: random.Random, field: FieldSpec, height: int) -> Scalar:
    if field.characteristic:
        return Residue(rng.randrange(field.characteristic), field.characteristic)
    return Fraction(rng.randint(-height, height))


def faithful_flatness_test(f: LinearMap, seed: int = 0, samples: Optional[int] = None) -> CheckResult:
    """Decide whether B is a free left A-module along an injective f: A -> B.

    The certificate is a list of names (or vectors) b_1..b_n with B = A b_1 + ... + A b_n.
    """
    _require(is_algebra_morphism(f), "algebra morphism")
    a, b = algebra_of(f.source), algebra_of(f.target)
    field = a.field
    na, nb = a.dim, b.dim
    if rank(f.matrix) != na:
        raise InvalidParameters("faithful_flatness_test needs an injective map")
    if nb % na:
        return CheckResult.no(f"not free: dim A = {na} does not divide dim B = {nb}", ("dimension", na, nb))
    n = nb // na
    hom_dim = _module_hom_dim(f)
    if hom_dim != n * na:
        return CheckResult.no(f"not free: dim Hom_A(B, A) = {hom_dim}, a free module of rank {n} needs {n * na}",
                              ("hom-rank", hom_dim, n * na))

    reps: List[int] = []
    columns: List[Vector] = []
    for k in range(nb):
        trial = columns + _orbit_columns(f, [b.basis(k)])
        if len(rref(field, trial, nb)[1]) == len(trial):
            reps.append(k)
            columns = trial
            if len(reps) == n:
                names = [b.names[k] for k in reps]
                log.info(f"✅ free of rank {n} on coset representatives {names}")
                return CheckResult.yes(f"free of rank {n}", certificate=names)

    p = field.characteristic
    if p and p ** (nb * n) <= EXHAUSTIVE_LIMIT:
        log.info(f"🔍 exhaustive search over {p ** (nb * n)} generator tuples")
        for flat in itertools.product(range(p), repeat=nb * n):
            gens = [tuple(Residue(x, p) for x in flat[i * nb:(i + 1) * nb]) for i in range(n)]
            if _is_basis(field, _orbit_columns(f, gens), nb):
                return CheckResult.yes(f"free of rank {n}", certificate=gens)
        return CheckResult.no(f"not free: no {n} generators span B", ("exhaustive", p ** (nb * n)))

    budget = samples if samples is not None else get_settings().flat_samples
    rng = random.Random(seed)
    for attempt in range(budget):
        height = 1 + attempt // 4
        gens = [tuple(_random_scalar(rng, field, height) for _ in range(nb)) for _ in range(n)]
        if _is_basis(field, _orbit_columns(f, gens), nb):
            log.info(f"✅ random generators found after {attempt + 1} samples")
            return CheckResult.yes(f"free of rank {n}", certificate=gens)
    log.warning(f"⚠️ no free basis found in {budget} samples (seed {seed})")
    return CheckResult.inconclusive(f"no free basis found in {budget} samples")


def faithful_coflatness_test(f: LinearMap, seed: int = 0, samples: Optional[int] = None) -> CheckResult:
    """Coflatness of a surjective coalgebra map C -> D through freeness of C^* over D^*."""
    _require(is_coalgebra_morphism(f), "coalgebra morphism")
    if rank(f.matrix) != coalgebra_of(f.target).dim:
        raise InvalidParameters("faithful_coflatness_test needs a surjective map")
    result = faithful_flatness_test(dual_map(f), seed, samples)
    return CheckResult(result.verdict, f"dual: {result.detail}", result.witness, result.certificate)


# ---------------------------------------------------------------- harness

@dataclass(frozen=True)
class HarnessRow:
    name: str
    level: str
    bijective: bool
    epi: Optional[str] = None
    flat: Optional[str] = None
    mono: Optional[str] = None
    coflat: Optional[str] = None


@dataclass(frozen=True)
class HarnessReport:
    rows: Tuple[HarnessRow, ...]
    inconclusive: int


def consistency_harness(corpus: Optional[Sequence[CorpusEntry]] = None, field: FieldSpec = FieldSpec.rationals(),
                        seed: int = 0) -> HarnessReport:
    """Check epi + faithfully flat => bijective and mono + faithfully coflat => bijective on every entry.

    A violation raises ``HopfError``; inconclusive freeness verdicts are counted and skipped.
    """
    entries = list(corpus) if corpus is not None else morphism_corpus(field)
    rows = []
    inconclusive = 0
    for entry in entries:
        f = entry.morphism
        r = rank(f.matrix)
        injective, surjective = r == f.source.dim, r == f.target.dim
        bijective = injective and surjective
        epi = flat = mono = coflat = None
        if entry.level != "coalgebra":
            epi = epi_test_alg(f).verdict
            if injective:
                flat = faithful_flatness_test(f, seed).verdict
        if entry.level != "algebra":
            mono = mono_test_coalg(f).verdict
            if surjective:
                coflat = faithful_coflatness_test(f, seed).verdict
        inconclusive += (flat == "inconclusive") + (coflat == "inconclusive")
        row = HarnessRow(entry.name, entry.level, bijective, epi, flat, mono, coflat)
        if not bijective and ((epi == "yes" and flat == "yes") or (mono == "yes" and coflat == "yes")):
            log.error(f"❌ consistency violation on {entry.name}: {row}")
            raise HopfError(f"consistency violation on {entry.name}: epi/flat or mono/coflat without bijectivity")
        log.info(f"✅ {entry.name}: epi={epi} flat={flat} mono={mono} coflat={coflat} bijective={bijective}")
        rows.append(row)
    return HarnessReport(tuple(rows), inconclusive)


# ---------------------------------------------------------------- grouplike oracle

def enumerate_grouplikes(c: AnyObject) -> List[Vector]:
    """All x with Delta(x) = x (x) x and eps(x) = 1, for dim <= 4."""
    coalg: Coalgebra = coalgebra_of(c)
    n = coalg.dim
    if n > GROUPLIKE_MAX_DIM:
        raise InvalidParameters(f"grouplike enumeration is limited to dim <= {GROUPLIKE_MAX_DIM}")
    field = coalg.field
    p = field.characteristic
    found: List[Vector] = []
    if p:
        if p ** n > 10 ** 6:
            raise ResourceBudgetExceeded(f"{p}^{n} candidates exceed the brute-force budget")
        for values in itertools.product(range(p), repeat=n):
            x = tuple(Residue(v, p) for v in values)
            if _is_grouplike(coalg, x):
                found.append(x)
        return found
    xs = sympy.symbols(f"x0:{n}")

    def q(s: Scalar) -> sympy.Rational:
        s = Fraction(s)  # type: ignore[arg-type]
        return sympy.Rational(s.numerator, s.denominator)

    delta = [[0 for _ in range(n)] for _ in range(n)]
    for i, j, k, s in coalg.comult.entries:
        delta[j][k] += q(s) * xs[i]
    equations = [delta[j][k] - xs[j] * xs[k] for j in range(n) for k in range(n)]
    equations.append(sum(q(e) * x for e, x in zip(coalg.counit, xs)) - 1)
    for solution in sympy.solve(equations, xs, dict=True):
        values = [solution.get(x, x) for x in xs]
        if all(v.is_rational for v in values):
            found.append(tuple(Fraction(int(v.p), int(v.q)) for v in values))
    return sorted(set(found))


def _is_grouplike(c: Coalgebra, x: Vector) -> bool:
    if c.apply_counit(x) != c.field.one:
        return False
    return c.coproduct(x) == tuple(u * v for u in x for v in x)
