"""Finitely presented connected graded algebras: input side.

A `Presentation` is a field, an ordered tuple of weighted generators, and a
tuple of homogeneous defining relations in the free algebra on those
generators.  The listing order of the generators matters: it induces the
deglex monomial order used by the rewriting engine.  `FilteredPresentation`
drops the homogeneity requirement and exists to be homogenized.

The module also houses the small text format for presentations, the standard
constructions (opposite algebra, enveloping algebra, skew polynomial rings,
graded Ore extensions, central homogenization), a corpus of built-in
presentations, and an independent multiplication oracle for the built-in
group-algebra subalgebra both as a cross-check and as the source of its
defining relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactla import F32003, FieldSpec, QQ, field_from_name
from .freealg import EMPTY_WORD, FreeElement, GeneratorInfo, Word, deglex_key, word_degree

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PresentationError(ValueError):
    """Input error with a source position when one is known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


def _validate_generators(generators) -> tuple:
    gens = tuple(GeneratorInfo(str(n), int(d)) for n, d in generators)
    seen = set()
    for g in gens:
        if not _NAME_RE.match(g.name):
            raise PresentationError(f"generator name {g.name!r} is not an identifier")
        if g.name in seen:
            raise PresentationError(f"duplicate generator {g.name!r}")
        if g.degree < 1:
            raise PresentationError(f"generator {g.name!r} has degree {g.degree} < 1")
        seen.add(g.name)
    return gens


@dataclass(frozen=True)
class Presentation:
    field: FieldSpec
    generators: tuple
    relations: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", _validate_generators(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        degs = self.degree_vector()
        for r in self.relations:
            if r.is_zero():
                raise PresentationError("zero relation")
            if r.degrees != degs:
                raise PresentationError("relation built over wrong generator weights")
            if not r.is_homogeneous():
                raise PresentationError("inhomogeneous relation in graded presentation")
            if r.degree() < 2:
                raise PresentationError(
                    "relation of degree < 2 would make a listed generator redundant")

    def degree_vector(self) -> tuple:
        return tuple(g.degree for g in self.generators)

    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def ngens(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class FilteredPresentation:
    """Same data as Presentation but relations may be inhomogeneous."""

    field: FieldSpec
    generators: tuple
    relations: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", _validate_generators(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        degs = self.degree_vector()
        for r in self.relations:
            if r.is_zero():
                raise PresentationError("zero relation")
            if r.degrees != degs:
                raise PresentationError("relation built over wrong generator weights")

    degree_vector = Presentation.degree_vector
    names = Presentation.names
    ngens = Presentation.ngens


# ---------------------------------------------------------------------------
# text format
#
#   algebra qplane over Q          (or: filtered algebra weyl over F32003)
#   deg x = 1, y = 1
#   rel y*x - 2*x*y                (# comment to end of line)

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)"
                       r"|(?P<sym>[=+*^/(),-]))")


def _tokenize(text: str, lineno: int) -> list:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PresentationError(f"unexpected character {stripped[0]!r}",
                                    lineno, pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), lineno, m.start(kind) + 1))
        pos = m.end()
    return toks


class _RelParser:
    """Recursive-descent parser for relation polynomials."""

    def __init__(self, toks, field: FieldSpec, degrees: tuple, index: dict):
        self.toks, self.i = toks, 0
        self.field, self.degrees, self.index = field, degrees, index

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _take(self, sym=None):
        t = self._peek()
        if t is None:
            last = self.toks[-1]
            raise PresentationError("unexpected end of relation", last[2], last[3])
        if sym is not None and (t[0] != "sym" or t[1] != sym):
            raise PresentationError(f"expected {sym!r}, found {t[1]!r}", t[2], t[3])
        self.i += 1
        return t

    def parse(self) -> FreeElement:
        e = self._sum()
        t = self._peek()
        if t is not None:
            raise PresentationError(f"trailing input {t[1]!r}", t[2], t[3])
        return e

    def _sum(self) -> FreeElement:
        t = self._peek()
        sign = 1
        if t and t[0] == "sym" and t[1] in "+-":
            self._take()
            sign = -1 if t[1] == "-" else 1
        e = self._product()
        if sign < 0:
            e = -e
        while True:
            t = self._peek()
            if t is None or t[0] != "sym" or t[1] not in "+-":
                return e
            self._take()
            rhs = self._product()
            e = e - rhs if t[1] == "-" else e + rhs

    def _product(self) -> FreeElement:
        e = self._factor()
        while True:
            t = self._peek()
            if t is None or t[0] != "sym" or t[1] not in "*/":
                return e
            self._take()
            if t[1] == "/":
                d = self._take()
                if d[0] != "int":
                    raise PresentationError("denominator must be an integer", d[2], d[3])
                denom = self.field.from_int(int(d[1]))
                if self.field.is_zero(denom):
                    raise PresentationError("division by zero in coefficient", d[2], d[3])
                e = e.scaled(self.field.inv(denom))
            else:
                e = e * self._factor()

    def _factor(self) -> FreeElement:
        t = self._take()
        if t[0] == "int":
            base = FreeElement.monomial(self.field, self.degrees, EMPTY_WORD,
                                        self.field.from_int(int(t[1])))
        elif t[0] == "name":
            if t[1] not in self.index:
                raise PresentationError(f"unknown generator {t[1]!r}", t[2], t[3])
            base = FreeElement.monomial(self.field, self.degrees, (self.index[t[1]],))
        elif t[1] == "(":
            base = self._sum()
            self._take(")")
        else:
            raise PresentationError(f"unexpected {t[1]!r}", t[2], t[3])
        nxt = self._peek()
        if nxt and nxt[0] == "sym" and nxt[1] == "^":
            self._take()
            e = self._take()
            if e[0] != "int":
                raise PresentationError("exponent must be an integer", e[2], e[3])
            n = int(e[1])
            if n < 0:
                raise PresentationError("negative exponent", e[2], e[3])
            out = FreeElement.monomial(self.field, self.degrees, EMPTY_WORD)
            for _ in range(n):
                out = out * base
            return out
        return base


_HEADER_RE = re.compile(r"\s*(filtered\s+)?algebra\s+([A-Za-z_][A-Za-z_0-9]*)"
                        r"\s+over\s+(\S+)\s*\Z")


def parse(text: str):
    """Parse the text format; returns Presentation or FilteredPresentation."""
    lines = text.splitlines()
    header = None
    gens: list[tuple[str, int]] = []
    rel_sources: list[tuple[list, int]] = []
    filtered = False
    label = ""
    field: FieldSpec | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise PresentationError(
                    "expected header 'algebra NAME over FIELD'", lineno, 1)
            filtered = bool(m.group(1))
            label = m.group(2)
            try:
                field = field_from_name(m.group(3))
            except ValueError as exc:
                raise PresentationError(str(exc), lineno, line.find(m.group(3)) + 1)
            header = line
            continue
        toks = _tokenize(line, lineno)
        head = toks[0]
        if head[0] == "name" and head[1] == "deg":
            body = toks[1:]
            while body:
                if body[0][0] != "name":
                    raise PresentationError("expected generator name",
                                            body[0][2], body[0][3])
                name = body[0][1]
                if len(body) < 3 or body[1][1] != "=" or body[2][0] != "int":
                    raise PresentationError(f"expected '{name} = <int>'",
                                            head[2], body[0][3])
                gens.append((name, int(body[2][1])))
                body = body[3:]
                if body:
                    if body[0][1] != ",":
                        raise PresentationError("expected ','", body[0][2], body[0][3])
                    body = body[1:]
        elif head[0] == "name" and head[1] == "rel":
            if not gens:
                raise PresentationError("rel before any deg line", head[2], head[3])
            rel_sources.append((toks[1:], lineno))
        else:
            raise PresentationError(f"expected 'deg' or 'rel', found {head[1]!r}",
                                    head[2], head[3])
    if header is None:
        raise PresentationError("empty input: missing 'algebra' header")
    geninfos = _validate_generators(gens)
    degrees = tuple(g.degree for g in geninfos)
    index = {g.name: i for i, g in enumerate(geninfos)}
    relations = []
    for toks, lineno in rel_sources:
        if not toks:
            raise PresentationError("empty relation", lineno, 1)
        elem = _RelParser(toks, field, degrees, index).parse()
        if elem.is_zero():
            raise PresentationError("relation simplifies to zero", lineno, toks[0][3])
        if not filtered and not elem.is_homogeneous():
            degs = sorted({word_degree(w, degrees) for w in elem.terms})
            raise PresentationError(
                f"inhomogeneous relation (degrees {degs}); use a "
                f"'filtered algebra' header and homogenize", lineno, toks[0][3])
        relations.append(elem)
    cls = FilteredPresentation if filtered else Presentation
    return cls(field, geninfos, tuple(relations), label)


# ---------------------------------------------------------------------------
# constructions


def _reverse_element(e: FreeElement, shift: int = 0, ndeg: tuple | None = None) -> FreeElement:
    degs = ndeg if ndeg is not None else e.degrees
    return FreeElement(e.field, degs,
                       {tuple(reversed([g + shift for g in w])): c
                        for w, c in e.terms.items()})


def opposite(p: Presentation) -> Presentation:
    """Same generators, every relation word reversed."""
    rels = tuple(_reverse_element(r) for r in p.relations)
    return Presentation(p.field, p.generators, rels, f"op({p.label})")


def enveloping(p: Presentation, suffix: str = "_op") -> Presentation:
    """Tensor of the algebra with its opposite.

    Generators: the originals, then one `suffix`-renamed copy per original
    (same listing order).  Relations: the originals verbatim, the reversed
    relations on the renamed copy, and all cross commutators  g'*h - h*g'
    making the two blocks commute.
    """
    n = p.ngens()
    names = p.names()
    for g in p.generators:
        if g.name + suffix in names:
            raise PresentationError(
                f"name collision: {g.name + suffix!r} already a generator")
    gens = list(p.generators) + [GeneratorInfo(g.name + suffix, g.degree)
                                 for g in p.generators]
    degrees = tuple(g.degree for g in gens)
    f = p.field
    rels: list[FreeElement] = []
    for r in p.relations:
        rels.append(FreeElement(f, degrees, dict(r.terms)))
    for r in p.relations:
        rels.append(_reverse_element(r, shift=n, ndeg=degrees))
    one = f.one()
    for j in range(n):
        for i in range(n):
            rels.append(FreeElement(f, degrees,
                                    {(n + j, i): one, (i, n + j): f.neg(one)}))
    return Presentation(f, tuple(gens), tuple(rels), f"env({p.label})")


def skew_polynomial(n: int, params, field: FieldSpec = F32003) -> Presentation:
    """Skew polynomial ring on x1..xn:  xj*xi = q_ij * xi*xj  for i < j.

    `params` is either a single nonzero scalar used for every pair or a dict
    {(i, j): scalar} on 0-based pairs i < j (missing pairs default to 1).
    """
    if n < 1:
        raise PresentationError("need at least one generator")
    gens = tuple(GeneratorInfo(f"x{i + 1}", 1) for i in range(n))
    degrees = (1,) * n
    if not isinstance(params, dict):
        params = {(i, j): params for i in range(n) for j in range(i + 1, n)}
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            q = field.from_int(1) if (i, j) not in params else params[(i, j)]
            if isinstance(q, int) and field.kind == "Q":
                q = Fraction(q)
            if field.kind == "Fp" and not isinstance(q, int):
                raise PresentationError(f"q_{i}{j} not a prime-field scalar")
            if field.is_zero(q):
                raise PresentationError(f"q_{i}{j} must be nonzero")
            rels.append(FreeElement(field, degrees,
                                    {(j, i): field.one(), (i, j): field.neg(q)}))
    return Presentation(field, gens, tuple(rels), f"skew-{n}")


def ore_extension(p: Presentation, alpha: dict, t_name: str = "t",
                  t_degree: int = 1) -> Presentation:
    """Graded Ore extension by a degree-preserving endomorphism.

    `alpha` maps each generator name to its image (a FreeElement over p's
    generators, homogeneous of the same degree).  The new generator obeys
    t*g = alpha(g)*t.  The endomorphism property is verified by reducing
    alpha(r) to normal form for every defining relation r; only that check is
    performed, so the result is sound for presentations, not for arbitrary
    maps that fail to descend.
    """
    names = p.names()
    if t_name in names:
        raise PresentationError(f"name collision: {t_name!r} already a generator")
    missing = [nm for nm in names if nm not in alpha]
    if missing:
        raise PresentationError(f"alpha missing images for {missing}")
    degrees = p.degree_vector()
    for nm, img in alpha.items():
        i = names.index(nm)
        if img.is_zero() or not img.is_homogeneous() or img.degree() != degrees[i]:
            raise PresentationError(f"alpha({nm}) is not homogeneous of degree "
                                    f"{degrees[i]}")
    # endomorphism check: alpha(r) must vanish modulo the defining ideal
    from .groebner import complete, normal_form

    def apply_alpha(e: FreeElement) -> FreeElement:
        out = FreeElement.zero(p.field, degrees)
        for w, c in e.terms.items():
            term = FreeElement.monomial(p.field, degrees, EMPTY_WORD, c)
            for g in w:
                term = term * alpha[names[g]]
            out = out + term
        return out

    bound = max((r.degree() for r in p.relations), default=2)
    rs = complete(p, bound)
    for r in p.relations:
        if not normal_form(rs, apply_alpha(r)).is_zero():
            raise PresentationError(
                f"alpha does not preserve the relation with lead "
                f"{r.lead_word()}; not an endomorphism of the presented algebra")

    gens = tuple(p.generators) + (GeneratorInfo(t_name, t_degree),)
    ndeg = tuple(g.degree for g in gens)
    tdx = len(names)
    f = p.field
    rels = [FreeElement(f, ndeg, dict(r.terms)) for r in p.relations]
    for i, nm in enumerate(names):
        lhs = FreeElement(f, ndeg, {(tdx, i): f.one()})
        rhs = FreeElement(f, ndeg,
                          {w + (tdx,): c for w, c in alpha[nm].terms.items()})
        rels.append(lhs - rhs)
    return Presentation(f, gens, tuple(rels), f"ore({p.label})")


def homogenize(fp: FilteredPresentation, t_name: str = "t") -> Presentation:
    """Central homogenization.

    Appends a degree-1 generator `t` *last*, pads each relation part up to the
    relation's top degree with right multiplications by t, and adds the
    centrality relations t*g - g*t.  (Left vs right padding generates the same
    ideal once t is central.)
    """
    names = fp.names()
    if t_name in names:
        raise PresentationError(f"name collision: {t_name!r} already a generator")
    gens = tuple(fp.generators) + (GeneratorInfo(t_name, 1),)
    ndeg = tuple(g.degree for g in gens)
    tdx = len(names)
    f = fp.field
    rels: list[FreeElement] = []
    for r in fp.relations:
        parts = r.homogeneous_parts()
        top = max(parts)
        terms: dict = {}
        for d, part in parts.items():
            pad = (tdx,) * (top - d)
            for w, c in part.terms.items():
                terms[w + pad] = c
        rels.append(FreeElement(f, ndeg, terms))
    one = f.one()
    for i in range(len(names)):
        rels.append(FreeElement(f, ndeg, {(tdx, i): one, (i, tdx): f.neg(one)}))
    return Presentation(f, gens, tuple(rels), f"homog({fp.label})")


# ---------------------------------------------------------------------------
# the group-algebra oracle
#
# The built-in 'smith-zhang' algebra is the subalgebra of a group algebra kG
# generated by four specific group elements of a common length.  G has
# generators a, b, c with a central, and c*b = a^(-1)*b*c, so every element
# has the unique normal form a^i b^j c^m and the product rule is
#
#   (i1, j1, m1) * (i2, j2, m2) = (i1 + i2 - m1*j2, j1 + j2, m1 + m2).
#
# Degree counts the number of c-type factors, so the four chosen elements sit
# in degree 1 and the oracle works entirely inside Z^3, with no rewriting.

_ORACLE_GENS = {
    "x": (0, 0, 1),   # c
    "z": (0, 1, 1),   # bc
    "t": (1, 1, 1),   # abc
    "y": (1, 0, 1),   # ac
}

SMITH_ZHANG_ORDER = ("x", "z", "t", "y")


def group_oracle_product(t1: tuple, t2: tuple) -> tuple:
    return (t1[0] + t2[0] - t1[2] * t2[1], t1[1] + t2[1], t1[2] + t2[2])


def group_oracle_word_image(word: Word, order=SMITH_ZHANG_ORDER) -> tuple:
    acc = (0, 0, 0)
    for g in word:
        acc = group_oracle_product(acc, _ORACLE_GENS[order[g]])
    return acc


@dataclass(frozen=True)
class OracleReport:
    dmax: int
    image_dims: tuple      # dim of the span of all degree-d generator words
    relation_counts: tuple  # 4^d - image_dims[d]


def group_algebra_oracle(dmax: int) -> OracleReport:
    """Span dimensions of generator words inside the ambient group algebra.

    Distinct group elements are linearly independent over any field, so the
    image dimension is the number of distinct normal-form triples and the
    whole report is field independent.
    """
    if dmax < 0:
        raise ValueError("negative degree")
    dims = [1]
    frontier = {(0, 0, 0)}
    gens = [_ORACLE_GENS[nm] for nm in SMITH_ZHANG_ORDER]
    for _ in range(dmax):
        frontier = {group_oracle_product(tpl, g) for tpl in frontier for g in gens}
        dims.append(len(frontier))
    rel = tuple(4 ** d - dims[d] for d in range(dmax + 1))
    return OracleReport(dmax, tuple(dims), rel)


def group_algebra_relations(field: FieldSpec = F32003, degree: int = 2) -> list:
    """Canonical basis of the degree-`degree` relation space of the oracle
    subalgebra: for every fiber of the image map, each non-minimal word minus
    the deglex-least word of its fiber, listed by ascending lead."""
    from .freealg import enumerate_words

    degrees = (1, 1, 1, 1)
    fibers: dict[tuple, list] = {}
    for w in enumerate_words(degrees, degree):
        fibers.setdefault(group_oracle_word_image(w), []).append(w)
    rels = []
    for words in fibers.values():
        words = sorted(words, key=lambda w: deglex_key(w, degrees))
        base = words[0]
        for w in words[1:]:
            rels.append(FreeElement(field, degrees,
                                    {w: field.one(), base: field.neg(field.one())}))
    rels.sort(key=lambda e: deglex_key(e.lead_word(), degrees))
    return rels


# ---------------------------------------------------------------------------
# corpus


def builtin_names() -> list:
    return ["free-2", "free-3", "polynomial-1", "polynomial-2", "polynomial-3",
            "quantum-plane-2", "smith-zhang", "weyl-filtered", "weyl-homogenized"]


_WEYL_TEXT = """
filtered algebra weyl over {field}
deg x = 1, y = 1
rel y*x - x*y - 1
"""


def builtin(name: str, field: FieldSpec = F32003):
    """Fetch a presentation from the corpus (see builtin_names())."""
    fname = field.describe()
    if name.startswith("free-"):
        n = int(name.split("-")[1])
        gens = tuple(GeneratorInfo(f"x{i + 1}", 1) for i in range(n))
        return Presentation(field, gens, (), name)
    if name.startswith("polynomial-"):
        n = int(name.split("-")[1])
        p = skew_polynomial(n, field.from_int(1), field)
        return Presentation(field, p.generators, p.relations, name)
    if name == "quantum-plane-2":
        degrees = (1, 1)
        rel = FreeElement(field, degrees,
                          {(1, 0): field.one(), (0, 1): field.neg(field.from_int(2))})
        return Presentation(field, (GeneratorInfo("x", 1), GeneratorInfo("y", 1)),
                            (rel,), name)
    if name == "smith-zhang":
        # listing order x, z, t, y orients the oracle relations into a full
        # descending staircase, which keeps the rewrite system quadratic
        gens = tuple(GeneratorInfo(nm, 1) for nm in SMITH_ZHANG_ORDER)
        rels = tuple(group_algebra_relations(field, 2))
        return Presentation(field, gens, rels, name)
    if name == "weyl-filtered":
        return parse(_WEYL_TEXT.format(field=fname))
    if name == "weyl-homogenized":
        return homogenize(parse(_WEYL_TEXT.format(field=fname)))
    raise PresentationError(f"unknown builtin {name!r}; have {builtin_names()}")
