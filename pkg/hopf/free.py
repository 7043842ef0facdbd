"""Degree-truncated free bialgebras and free Hopf algebras on coalgebras and bialgebras.

Generators are the letters c_n (c a basis element of the base, n = 0..n_max), letter
index ``n * dim + c``. A truncation of cutoff d and slack s completes the relations
over all words of length <= d + s (deglex order, longer words lead) and keeps the
normal words of length <= d. Dimensions are therefore upper bounds, exact wherever
the slack has stabilized them. Families run to n_max = d + s unless pinned; the
stability rerun keeps the families and shrinks the window to d + s - 1.
"""
import heapq
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from hopf.errors import InvalidParameters, ResourceBudgetExceeded
from hopf.examples import CappedMonoid
from hopf.linalg import Matrix, rank, rank_kernel_image
from hopf.scalars import FieldSpec, Scalar
from hopf.structures import (
    Bialgebra,
    Coalgebra,
    HopfAlgebra,
    bialgebra_of,
    coalgebra_of,
    opposite,
)
from hopf.verdicts import CheckResult
from workbench.config import get_settings

log = logging.getLogger(__name__)

Word = Tuple[int, ...]
Poly = Dict[Word, Scalar]


def word_key(w: Word) -> Tuple[int, Word]:
    return len(w), w


def _add(acc: Dict, key: object, c: Scalar) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _contains(word: Word, sub: Word) -> bool:
    n = len(sub)
    return any(word[i:i + n] == sub for i in range(len(word) - n + 1))


class RewritingSystem:
    """Deglex rewriting rules lead -> tail, completed over words of bounded length."""

    def __init__(self, field: FieldSpec, bound: int, cap: Optional[int] = None) -> None:
        self.field = field
        self.bound = bound
        self.cap = cap if cap is not None else get_settings().word_cap
        self.rules: Dict[Word, Poly] = {}
        self._lengths: Counter = Counter()
        self.dropped = 0

    def _find_redex(self, w: Word) -> Optional[Tuple[int, Word]]:
        lengths = sorted(self._lengths)
        for i in range(len(w)):
            for n in lengths:
                if i + n > len(w):
                    break
                sub = w[i:i + n]
                if sub in self.rules:
                    return i, sub
        return None

    def reduce(self, poly: Poly) -> Poly:
        result: Poly = {}
        work = dict(poly)
        while work:
            w = max(work, key=word_key)
            c = work.pop(w)
            redex = self._find_redex(w)
            if redex is None:
                result[w] = c
                continue
            i, lead = redex
            prefix, suffix = w[:i], w[i + len(lead):]
            for u, a in self.rules[lead].items():
                _add(work, prefix + u + suffix, c * a)
        return result

    def _has_lead_suffix(self, w: Word) -> bool:
        return any(n <= len(w) and w[-n:] in self.rules for n in self._lengths)

    def _insert(self, lead: Word, tail: Poly) -> None:
        self.rules[lead] = tail
        self._lengths[len(lead)] += 1

    def _remove(self, lead: Word) -> Poly:
        self._lengths[len(lead)] -= 1
        if not self._lengths[len(lead)]:
            del self._lengths[len(lead)]
        return self.rules.pop(lead)

    def _critical_pairs(self, first: Word, second: Word) -> Iterator[Tuple[Word, Poly]]:
        """Overlaps first = a.o, second = o.b; yields the overlap word and t1.b - a.t2."""
        t1, t2 = self.rules[first], self.rules[second]
        for k in range(1, min(len(first), len(second))):
            if first[-k:] != second[:k]:
                continue
            a, b = first[:-k], second[k:]
            overlap = first + b
            s: Poly = {}
            for u, c in t1.items():
                _add(s, u + b, c)
            for u, c in t2.items():
                _add(s, a + u, -c)
            yield overlap, s

    def complete(self, relations: Sequence[Poly]) -> None:
        heap: List[Tuple[Tuple[int, Word], int, Poly]] = []
        counter = itertools.count()

        def push(p: Poly) -> None:
            if p:
                heapq.heappush(heap, (word_key(max(p, key=word_key)), next(counter), p))

        for r in relations:
            push(r)
        while heap:
            if len(heap) + len(self.rules) > self.cap:
                raise ResourceBudgetExceeded(
                    f"completion exceeded the word budget of {self.cap} (HOPF_WORD_CAP)")
            _, _, p = heapq.heappop(heap)
            p = self.reduce(p)
            if not p:
                continue
            lead = max(p, key=word_key)
            if len(lead) > self.bound:
                self.dropped += 1
                continue
            inv = self.field.one / p[lead]
            tail = {w: -c * inv for w, c in p.items() if w != lead}
            for old in [w for w in self.rules if _contains(w, lead)]:
                old_tail = self._remove(old)
                requeued = {w: -c for w, c in old_tail.items()}
                requeued[old] = self.field.one
                push(requeued)
            self._insert(lead, tail)
            for other in list(self.rules):
                pairs = list(self._critical_pairs(lead, other))
                if other != lead:
                    pairs += list(self._critical_pairs(other, lead))
                for overlap, s in pairs:
                    if len(overlap) <= self.bound:
                        push(s)
        for lead in list(self.rules):
            self.rules[lead] = self.reduce(self.rules[lead])
        log.info(f"✅ completion: {len(self.rules)} rules within length {self.bound}")

    def normal_words(self, letters: int, max_len: int) -> List[Word]:
        out: List[Word] = [()]
        level: List[Word] = [()]
        for _ in range(max_len):
            level = [w + (a,) for w in level for a in range(letters) if not self._has_lead_suffix(w + (a,))]
            out += level
            if len(out) > self.cap:
                raise ResourceBudgetExceeded(f"more than {self.cap} normal words (HOPF_WORD_CAP)")
        return sorted(out, key=word_key)


# ---------------------------------------------------------------- presentations

@dataclass(frozen=True)
class GradedPresentation:
    """Generators c_n with their coproducts, counits and the relation list."""

    field: FieldSpec
    base_names: Tuple[str, ...]
    n_max: int
    letter_coproduct: Dict[int, Tuple[Tuple[int, int, Scalar], ...]]
    letter_counit: Tuple[Scalar, ...]
    relations: Tuple[Poly, ...]
    has_antipode: bool

    @property
    def base_dim(self) -> int:
        return len(self.base_names)

    @property
    def letters(self) -> int:
        return self.base_dim * (self.n_max + 1)

    def letter(self, c: int, n: int) -> int:
        return n * self.base_dim + c

    def family(self, letter: int) -> int:
        return letter // self.base_dim

    def letter_name(self, letter: int) -> str:
        return f"{self.base_names[letter % self.base_dim]}_{self.family(letter)}"


def _coalgebra_presentation(c: Coalgebra, n_max: int, antipode: bool) -> GradedPresentation:
    field, m = c.field, c.dim
    letter_coproduct: Dict[int, Tuple[Tuple[int, int, Scalar], ...]] = {}
    for n in range(n_max + 1):
        for i in range(m):
            terms = c.coproduct_basis(i)
            if n % 2:
                terms = [(k, j, x) for j, k, x in terms]
            letter_coproduct[n * m + i] = tuple((n * m + j, n * m + k, x) for j, k, x in terms)
    counit = tuple(c.counit[i % m] for i in range(m * (n_max + 1)))
    relations: List[Poly] = []
    if antipode:
        for n in range(n_max):
            for i in range(m):
                left: Poly = {}
                right: Poly = {}
                for j, k, x in letter_coproduct[n * m + i]:
                    # S(x_n) = x_{n+1}
                    _add(left, (j + m, k), x)
                    _add(right, (j, k + m), x)
                if c.counit[i]:
                    _add(left, (), -c.counit[i])
                    _add(right, (), -c.counit[i])
                relations += [left, right]
    return GradedPresentation(field, c.names, n_max if antipode else 0, letter_coproduct, counit,
                              tuple(r for r in relations if r), antipode)


def _multiplicativity_relations(p: GradedPresentation, products: Dict[Tuple[int, int], List[Tuple[int, Scalar]]],
                                unit: Sequence[Tuple[int, Scalar]]) -> List[Poly]:
    """x_n y_n - (xy)_n and 1_n - 1 for every family; odd families reverse the product.

    Every pair in ``products`` gets a relation, so an empty product list means x_n y_n = 0.
    """
    relations: List[Poly] = []
    field = p.field
    for n in range(p.n_max + 1):
        for (i, j), terms in products.items():
            word = (p.letter(i, n), p.letter(j, n)) if n % 2 == 0 else (p.letter(j, n), p.letter(i, n))
            rel: Poly = {word: field.one}
            for k, x in terms:
                _add(rel, (p.letter(k, n),), -x)
            relations.append(rel)
        one: Poly = {(): -field.one}
        for i, x in unit:
            _add(one, (p.letter(i, n),), x)
        if one:
            relations.append(one)
    return relations


def _bialgebra_presentation(b: Union[Bialgebra, HopfAlgebra, CappedMonoid], n_max: int) -> GradedPresentation:
    field = b.field
    if isinstance(b, CappedMonoid):
        base = _coalgebra_presentation(b.coalgebra, n_max, antipode=True)
        # pairs past the cap stay undefined
        products: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {
            (i, j): [(k, field.one)] for i, j, k in b.products}
        unit = [(b.unit, field.one)]
    else:
        bialg = bialgebra_of(b)
        base = _coalgebra_presentation(bialg.coalgebra, n_max, antipode=True)
        m = bialg.algebra.dim
        products = {(i, j): [] for i in range(m) for j in range(m)}
        for i, j, k, x in bialg.algebra.mult.entries:
            products[(i, j)].append((k, x))
        unit = [(i, x) for i, x in enumerate(bialg.algebra.unit) if x]
    extra = _multiplicativity_relations(base, products, unit)
    return replace(base, relations=base.relations + tuple(extra))


# ---------------------------------------------------------------- truncations

@dataclass(frozen=True)
class TruncatedBialgebra:
    """Normal words of length <= degree with their product, coproduct, counit and antipode.

    Products landing above the cutoff are out of range (``multiply`` returns None).
    For an opposite truncation the product is reversed and ``antipode`` is the skew antipode.
    """

    kind: str
    presentation: GradedPresentation
    system: RewritingSystem = dc_field(repr=False, compare=False)
    degree: int
    slack: int
    words: Tuple[Word, ...]
    stable: bool = False
    opposite: bool = False

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    @property
    def n_max(self) -> int:
        return self.presentation.n_max

    @property
    def dim(self) -> int:
        return len(self.words)

    @cached_property
    def index(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.words)}

    @cached_property
    def dims(self) -> Tuple[int, ...]:
        lengths = Counter(len(w) for w in self.words)
        return tuple(itertools.accumulate(lengths.get(l, 0) for l in range(self.degree + 1)))

    def word_name(self, w: Word) -> str:
        if not w:
            return "1"
        return "·".join(self.presentation.letter_name(a) for a in w)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.word_name(w) for w in self.words)

    def normal_form(self, poly: Poly) -> Dict[int, Scalar]:
        reduced = self.system.reduce(poly)
        out: Dict[int, Scalar] = {}
        for w, c in reduced.items():
            if w not in self.index:
                raise InvalidParameters(f"{self.word_name(w)} lies above the cutoff {self.degree}")
            out[self.index[w]] = c
        return out

    def multiply(self, i: int, j: int) -> Optional[Dict[int, Scalar]]:
        u, v = self.words[i], self.words[j]
        if len(u) + len(v) > self.degree:
            return None
        return self.normal_form({v + u if self.opposite else u + v: self.field.one})

    @cached_property
    def multiplication_table(self) -> Dict[Tuple[int, int], Dict[int, Scalar]]:
        table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                product = self.multiply(i, j)
                if product is not None:
                    table[(i, j)] = product
        return table

    def coproduct(self, i: int) -> Dict[Tuple[int, int], Scalar]:
        """Delta of a basis word; lands in F_k (x) F_k for a word of length k."""
        terms: Dict[Tuple[Word, Word], Scalar] = {((), ()): self.field.one}
        for a in self.words[i]:
            nxt: Dict[Tuple[Word, Word], Scalar] = {}
            for (x, y), c in terms.items():
                for j, k, s in self.presentation.letter_coproduct[a]:
                    _add(nxt, (x + (j,), y + (k,)), c * s)
            terms = nxt
        forms: Dict[Word, Dict[int, Scalar]] = {}
        out: Dict[Tuple[int, int], Scalar] = {}
        for (x, y), c in terms.items():
            for w in (x, y):
                if w not in forms:
                    forms[w] = self.normal_form({w: self.field.one})
            for p, a in forms[x].items():
                for q, b in forms[y].items():
                    _add(out, (p, q), c * a * b)
        return out

    def counit(self, i: int) -> Scalar:
        value = self.field.one
        for a in self.words[i]:
            value = value * self.presentation.letter_counit[a]
        return value

    def antipode(self, i: int) -> Optional[Dict[int, Scalar]]:
        """S(c_n) = c_(n+1), anti-multiplicative; None on words with a top-family letter.

        On an opposite truncation this is the inverse shift c_(n+1) -> c_n, undefined on
        words with a family-0 letter.
        """
        if not self.presentation.has_antipode:
            return None
        w = self.words[i]
        p = self.presentation
        edge, step = (0, -p.base_dim) if self.opposite else (p.n_max, p.base_dim)
        if any(p.family(a) == edge for a in w):
            return None
        image = tuple(a + step for a in reversed(w))
        return self.normal_form({image: self.field.one})

    @property
    def unit_arrow(self) -> Optional[Matrix]:
        """alpha: base -> F_1, e_i -> (e_i)_0 (None when the cutoff is 0)."""
        if self.degree < 1:
            return None
        rows = self.dims[1]
        columns = []
        for c in range(self.presentation.base_dim):
            form = self.normal_form({(c,): self.field.one})
            columns.append(tuple(form.get(r, self.field.zero) for r in range(rows)))
        return Matrix.from_columns(self.field, columns, rows)

    def metadata(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "slack": self.slack,
            "n_max": self.n_max,
            "rules": len(self.system.rules),
            "dropped": self.system.dropped,
            "stable": self.stable,
            "opposite": self.opposite,
        }


def _truncate(kind: str, presentation: GradedPresentation, d: int, s: int) -> TruncatedBialgebra:
    system = RewritingSystem(presentation.field, d + s)
    log.info(f"🔍 {kind}: {presentation.letters} letters, {len(presentation.relations)} relations, "
             f"window {d + s}")
    system.complete(presentation.relations)
    words = tuple(system.normal_words(presentation.letters, d))
    return TruncatedBialgebra(kind, presentation, system, d, s, words)


class PresentationBuilder:
    def __init__(self, base: object, bialgebra: bool) -> None:
        self.base = base
        self.bialgebra = bialgebra

    def __call__(self, n_max: int) -> GradedPresentation:
        if self.bialgebra:
            return _bialgebra_presentation(self.base, n_max)  # type: ignore[arg-type]
        return _coalgebra_presentation(coalgebra_of(self.base), n_max, antipode=True)  # type: ignore[arg-type]


def _with_stability(kind: str, build: PresentationBuilder, d: int, s: int,
                    n_max: Optional[int] = None) -> TruncatedBialgebra:
    """Truncate with window d + s; stable when window d + s - 1 over the same families agrees."""
    if d < 0 or s < 0:
        raise InvalidParameters("degree and slack must be non-negative")
    if n_max is not None and n_max < 1:
        raise InvalidParameters("n_max must be at least 1")
    presentation = build(d + s if n_max is None else n_max)
    t = _truncate(kind, presentation, d, s)
    stable = False
    if s > 0:
        stable = _truncate(kind, presentation, d, s - 1).dims == t.dims
    if not stable:
        log.warning(f"⚠️ {kind}: dims {list(t.dims)} not confirmed stable at slack {s}")
    return replace(t, stable=stable)


def free_bialgebra(c: Union[Coalgebra, Bialgebra, HopfAlgebra], d: int) -> TruncatedBialgebra:
    """Tensor algebra on a coalgebra, Delta extended multiplicatively; no relations."""
    coalg = coalgebra_of(c)
    if d < 0:
        raise InvalidParameters("degree must be non-negative")
    presentation = _coalgebra_presentation(coalg, 0, antipode=False)
    system = RewritingSystem(coalg.field, d)
    words = tuple(system.normal_words(presentation.letters, d))
    return TruncatedBialgebra("free-bialgebra", presentation, system, d, 0, words, stable=True)


def free_hopf_on_coalgebra(c: Union[Coalgebra, Bialgebra, HopfAlgebra], d: int, s: int,
                           n_max: Optional[int] = None) -> TruncatedBialgebra:
    """Families 0..n_max, by default d + s."""
    return _with_stability("free-hopf", PresentationBuilder(coalgebra_of(c), bialgebra=False), d, s, n_max)


def free_hopf_on_bialgebra(b: Union[Bialgebra, HopfAlgebra, CappedMonoid], d: int, s: int,
                           n_max: Optional[int] = None) -> TruncatedBialgebra:
    return _with_stability("free-hopf-bialgebra", PresentationBuilder(b, bialgebra=True), d, s, n_max)


def opposite_truncation(t: TruncatedBialgebra) -> TruncatedBialgebra:
    return replace(t, opposite=not t.opposite)


def k_star(h: HopfAlgebra, d: int, s: int) -> TruncatedBialgebra:
    """Enveloping Hopf algebra with bijective antipode, as the opposite of H* of H^op."""
    inner = free_hopf_on_bialgebra(bialgebra_of(opposite(h)), d, s)
    return replace(opposite_truncation(inner), kind="kstar")


def colimit_oracle(h: HopfAlgebra, d: int) -> List[int]:
    """Per-level dims of the direct limit of H -S^2-> H -S^2-> ...: [1, D, ..., D]."""
    if h.antipode is None:
        raise InvalidParameters("colimit_oracle needs an attached antipode")
    square = h.antipode @ h.antipode
    power = square
    current = rank(power)
    for _ in range(h.dim):
        power = power @ square
        nxt = rank(power)
        if nxt == current:
            break
        current = nxt
    return [1] + [current] * d


class ImageDims(NamedTuple):
    level: int
    full_dim: int
    image_dim: int
    undefined: int


def antipode_image_dims(t: TruncatedBialgebra) -> List[ImageDims]:
    """dim span S(F_l) per level; words where S is out of range are counted in ``undefined``."""
    if not t.presentation.has_antipode:
        raise InvalidParameters(f"{t.kind} truncation carries no antipode")
    out = []
    for level, full in enumerate(t.dims):
        images = []
        undefined = 0
        for i in range(full):
            image = t.antipode(i)
            if image is None:
                undefined += 1
                continue
            images.append(tuple(image.get(r, t.field.zero) for r in range(full)))
        image_dim = rank(Matrix.from_columns(t.field, images, full)) if images else 0
        out.append(ImageDims(level, full, image_dim, undefined))
    return out


@dataclass(frozen=True)
class UnitArrowReport:
    injective_on_base: bool
    image_dim: int
    up_to_cutoff: bool
    witness: Optional[str] = None


def format_combination(field: FieldSpec, v: Sequence[Scalar], names: Sequence[str]) -> str:
    """Highest basis index first, e.g. ``z − 1``."""
    parts = []
    for i in reversed(range(len(v))):
        c = v[i]
        if not c:
            continue
        negative = field.characteristic == 0 and c < 0  # type: ignore[operator]
        magnitude = -c if negative else c
        body = names[i] if magnitude == field.one else f"{field.format_scalar(magnitude)}·{names[i]}"
        parts.append(("−" if negative else "+", body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "−" else "") + parts[0][1]
    return text + "".join(f" {sign} {body}" for sign, body in parts[1:])


def unit_arrow_report(t: TruncatedBialgebra) -> UnitArrowReport:
    """A kernel vector is definitive; injectivity only holds up to the cutoff."""
    alpha = t.unit_arrow
    if alpha is None:
        raise InvalidParameters("the unit arrow needs degree >= 1")
    rki = rank_kernel_image(alpha)
    if rki.kernel_basis.cols == 0:
        return UnitArrowReport(True, rki.rank, True)
    v = rki.kernel_basis.column(0)
    last = next(c for c in reversed(v) if c)
    v = tuple(c / last for c in v)
    witness = format_combination(t.field, v, t.presentation.base_names)
    log.info(f"🔍 unit arrow kernel: {witness}")
    return UnitArrowReport(False, rki.rank, False, witness)


# ---------------------------------------------------------------- degreewise checks

def _tensor_product_in(t: TruncatedBialgebra, x: Dict[Tuple[int, int], Scalar],
                       y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
    out: Dict[Tuple[int, int], Scalar] = {}
    table = t.multiplication_table
    for (p, q), a in x.items():
        for (r, u), b in y.items():
            for k1, c1 in table[(p, r)].items():
                for k2, c2 in table[(q, u)].items():
                    _add(out, (k1, k2), a * b * c1 * c2)
    return out


def _apply_linear(images: Dict[int, Dict[int, Scalar]], v: Dict[int, Scalar]) -> Dict[int, Scalar]:
    out: Dict[int, Scalar] = {}
    for i, c in v.items():
        for k, a in images[i].items():
            _add(out, k, c * a)
    return out


def _antipode_equation(t: TruncatedBialgebra, images: Dict[int, Optional[Dict[int, Scalar]]],
                       delta: Dict[Tuple[int, int], Scalar], side: str) -> Optional[Dict[int, Scalar]]:
    """m(S (x) id)Delta or m(id (x) S)Delta of one word; None when S or a product is out of range."""
    table = t.multiplication_table
    out: Dict[int, Scalar] = {}
    for (j, k), c in delta.items():
        image = images[j] if side == "left" else images[k]
        if image is None:
            return None
        for p, a in image.items():
            pair = (p, k) if side == "left" else (j, p)
            if pair not in table:
                return None
            for r, b in table[pair].items():
                _add(out, r, c * a * b)
    return out


def truncation_check(t: TruncatedBialgebra) -> CheckResult:
    """Bialgebra axioms, anti-multiplicativity of S and the antipode equation wherever every product stays within the cutoff."""
    names = t.names
    coproducts = {i: t.coproduct(i) for i in range(t.dim)}
    for i in range(t.dim):
        left: Dict = {}
        right: Dict = {}
        for (j, k), c in coproducts[i].items():
            for (a, b), x in coproducts[j].items():
                _add(left, (a, b, k), c * x)
            for (a, b), x in coproducts[k].items():
                _add(right, (j, a, b), c * x)
        if left != right:
            return CheckResult.no(f"coassociativity fails at {names[i]}", ("coassoc", i))
        lhs: Dict = {}
        rhs: Dict = {}
        for (j, k), c in coproducts[i].items():
            _add(lhs, k, c * t.counit(j))
            _add(rhs, j, c * t.counit(k))
        if lhs != {i: t.field.one} or rhs != {i: t.field.one}:
            return CheckResult.no(f"counit law fails at {names[i]}", ("counit", i))
    for (i, j), product in t.multiplication_table.items():
        delta: Dict = {}
        for k, c in product.items():
            for pair, x in coproducts[k].items():
                _add(delta, pair, c * x)
        if delta != _tensor_product_in(t, coproducts[i], coproducts[j]):
            return CheckResult.no(f"Delta not multiplicative at ({names[i]}, {names[j]})", ("coproduct-mult", i, j))
        eps = sum((c * t.counit(k) for k, c in product.items()), t.field.zero)
        if eps != t.counit(i) * t.counit(j):
            return CheckResult.no(f"counit not multiplicative at ({names[i]}, {names[j]})", ("counit-mult", i, j))
    if t.presentation.has_antipode:
        images = {i: t.antipode(i) for i in range(t.dim)}
        for (i, j), product in t.multiplication_table.items():
            if images[i] is None or images[j] is None or any(images[k] is None for k in product):
                continue
            left = _apply_linear(images, product)  # type: ignore[arg-type]
            right: Dict[int, Scalar] = {}
            for p, a in images[j].items():  # type: ignore[union-attr]
                for q, b in images[i].items():  # type: ignore[union-attr]
                    for k, c in t.multiplication_table[(p, q)].items():
                        _add(right, k, a * b * c)
            if left != right:
                return CheckResult.no(f"S not anti-multiplicative at ({names[i]}, {names[j]})", ("antipode-mult", i, j))
        for i in range(t.dim):
            for side in ("left", "right"):
                value = _antipode_equation(t, images, coproducts[i], side)  # type: ignore[arg-type]
                if value is None:
                    continue
                expected = {0: t.counit(i)} if t.counit(i) else {}
                if value != expected:
                    return CheckResult.no(f"antipode equation ({side}) fails at {names[i]}", ("antipode", side, i))
    return CheckResult.yes(f"{t.kind} truncation consistent up to degree {t.degree}")
