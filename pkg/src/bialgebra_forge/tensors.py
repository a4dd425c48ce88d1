"""Structure-constant tensors and Lie/co-Lie/bialgebra defect checks.

Bracket constants C^k_ij live in a BracketTensor keyed (i, j, k); the
cobracket constants D_i^jk of the dual side are keyed (i, j, k) as well,
with (j, k) the wedge pair. Storage is sparse and keeps entries exactly
as supplied (both orientations are allowed), so the antisymmetry defect
is an observable rather than an enforced invariant: lookups fall back to
the sign-flipped key only when the requested orientation is absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisError, InputError, MismatchedBasesError
from .params import ParamPoly, ScaleMonomial
from .scalars import Scalar


class Basis:
    """Fixed ordered list of generator names."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InputError("generator names must be unique")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Basis) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Basis{self.names}"


class _ConstantTensor:
    """Common storage for bracket and cobracket constants."""

    kind = "?"

    def __init__(self, basis: Basis, params, order, entries=None):
        self.basis = basis
        self.params = tuple(params)
        self.order = order
        self.entries = {}
        if entries:
            for key, value in entries.items():
                self.set_entry(key, value)

    def _zero(self) -> ParamPoly:
        return ParamPoly.zero(self.params, self.order)

    def _coerce(self, value) -> ParamPoly:
        if isinstance(value, ParamPoly):
            if value.params != self.params or value.order != self.order:
                raise InputError("entry context mismatch")
            return value
        if isinstance(value, (Scalar, int)):
            return ParamPoly.const(self.params, self.order, value)
        raise InputError(f"bad tensor entry {value!r}")

    def set_entry(self, key, value):
        i, j, k = key
        value = self._coerce(value)
        if value:
            self.entries[(i, j, k)] = self.entries.get((i, j, k), self._zero()) + value

    def value(self, i, j, k) -> ParamPoly:
        """Entry with antisymmetry realised by sign when only the
        opposite orientation is stored."""
        got = self.entries.get((i, j, k))
        if got is not None:
            return got
        a, b = self._flip(i, j, k)
        got = self.entries.get((a, b, k) if self.kind == "bracket" else (i, a, b))
        if got is not None:
            return -got
        return self._zero()

    def _flip(self, i, j, k):
        if self.kind == "bracket":
            return j, i
        return k, j

    def is_zero(self) -> bool:
        return all(not v for v in self.entries.values())

    def same_shape(self, other):
        if self.basis != other.basis:
            raise MismatchedBasesError("tensors defined over different bases")
        if self.params != other.params or self.order != other.order:
            raise InputError("tensors defined over different parameter contexts")

    def map_entries(self, fn, params=None, order=None):
        out = type(self)(
            self.basis,
            self.params if params is None else params,
            self.order if order is None else order,
        )
        for key, value in self.entries.items():
            new = fn(value)
            if new:
                out.entries[key] = new
        return out

    def substitute(self, images, target=None):
        params = self.params if target is None else tuple(target[0])
        order = self.order if target is None else target[1]
        return self.map_entries(
            lambda v: v.substitute(images, (params, order)), params, order
        )

    def __eq__(self, other):
        if type(other) is not type(self) or self.basis != other.basis:
            return NotImplemented
        n = len(self.basis)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.value(i, j, k) != other.value(i, j, k):
                        return False
        return True

    def __repr__(self):
        names = self.basis.names
        body = ", ".join(
            f"{self._key_str(key, names)}: {value}"
            for key, value in sorted(self.entries.items())
        )
        return f"{type(self).__name__}({{{body}}})"


class BracketTensor(_ConstantTensor):
    """C^k_ij, antisymmetric in (i, j)."""

    kind = "bracket"

    @staticmethod
    def _key_str(key, names):
        i, j, k = key
        return f"C^{names[k]}_{names[i]},{names[j]}"

    def bracket(self, i, j) -> dict:
        """[x_i, x_j] as a map generator index -> ParamPoly."""
        out = {}
        for (a, b, k), _ in self.entries.items():
            if {a, b} == {i, j} and a != b:
                v = self.value(i, j, k)
                if v:
                    out[k] = out.get(k, self._zero()) + v
        return {k: v for k, v in out.items() if v}

    def rescale(self, scales) -> "BracketTensor":
        scales = _normalise_scales(self, scales)
        out = BracketTensor(self.basis, self.params, self.order)
        for (i, j, k), value in self.entries.items():
            factor = scales[i] * scales[j] * scales[k].inverse()
            new = factor.apply_to(value)
            if new:
                out.entries[(i, j, k)] = new
        return out


class CobracketTensor(_ConstantTensor):
    """D_i^jk, antisymmetric in (j, k)."""

    kind = "cobracket"

    @staticmethod
    def _key_str(key, names):
        i, j, k = key
        return f"D_{names[i]}^{names[j]},{names[k]}"

    def wedge_of(self, i) -> dict:
        """delta(x_i) as canonical wedge coefficients {(a<b): ParamPoly}."""
        out = {}
        seen = set()
        for (m, a, b) in self.entries:
            if m != i or a == b:
                continue
            lo, hi = (a, b) if a < b else (b, a)
            if (lo, hi) in seen:
                continue
            seen.add((lo, hi))
            v = self.value(i, lo, hi)
            if v:
                out[(lo, hi)] = v
        return out

    def dual_bracket(self) -> BracketTensor:
        """The bracket on the dual space: C^i_jk := D_i^jk (raw keys
        transposed, orientations preserved)."""
        out = BracketTensor(self.basis, self.params, self.order)
        for (i, j, k), value in self.entries.items():
            out.entries[(j, k, i)] = value
        return out

    def rescale(self, scales) -> "CobracketTensor":
        scales = _normalise_scales(self, scales)
        out = CobracketTensor(self.basis, self.params, self.order)
        for (i, j, k), value in self.entries.items():
            factor = scales[i] * scales[j].inverse() * scales[k].inverse()
            new = factor.apply_to(value)
            if new:
                out.entries[(i, j, k)] = new
        return out


def _normalise_scales(tensor, scales):
    if len(scales) != len(tensor.basis):
        raise InputError("one scale per generator required")
    out = []
    for s in scales:
        if isinstance(s, ScaleMonomial):
            out.append(s)
        elif isinstance(s, Scalar):
            out.append(ScaleMonomial.constant(tensor.params, s))
        elif isinstance(s, int):
            out.append(ScaleMonomial.constant(tensor.params, Scalar(s)))
        else:
            raise InputError(f"bad scale {s!r}")
    return out


def rescale_basis(tensor, scales):
    """B(t): a_i -> a_i / s_i on either tensor kind."""
    return tensor.rescale(scales)


# -- wedge helpers -----------------------------------------------------------


def _wedge_add(acc, a, b, value):
    if a == b or not value:
        return
    if a > b:
        a, b = b, a
        value = -value
    cur = acc.get((a, b))
    new = value if cur is None else cur + value
    if new:
        acc[(a, b)] = new
    else:
        acc.pop((a, b), None)


# -- defect computations -----------------------------------------------------


def antisymmetry_defect(tensor) -> dict:
    """Entry (i,j,k) -> C^k_ij + C^k_ji over the stored support."""
    out = {}
    seen = set()
    for key in tensor.entries:
        if tensor.kind == "bracket":
            i, j, k = key
            pair = ((min(i, j), max(i, j)), k)
            flipped = (j, i, k)
            canon = (pair[0][0], pair[0][1], k)
        else:
            i, j, k = key
            pair = (i, (min(j, k), max(j, k)))
            flipped = (i, k, j)
            canon = (i, pair[1][0], pair[1][1])
        if canon in seen:
            continue
        seen.add(canon)
        a = tensor.entries.get(key, tensor._zero())
        b = tensor.entries.get(flipped, tensor._zero())
        if key == flipped:
            d = a + a  # diagonal entry: antisymmetry forces it to vanish
        else:
            d = a + b if flipped in tensor.entries else tensor._zero()
        if d:
            out[canon] = d
    return out


def jacobi_defect(mu: BracketTensor) -> dict:
    """J^l_ijk = sum_m C^m_ij C^l_mk + C^m_jk C^l_mi + C^m_ki C^l_mj,
    reported for i<j<k."""
    n = len(mu.basis)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    acc = mu._zero()
                    for m in range(n):
                        acc = acc + mu.value(i, j, m) * mu.value(m, k, l)
                        acc = acc + mu.value(j, k, m) * mu.value(m, i, l)
                        acc = acc + mu.value(k, i, m) * mu.value(m, j, l)
                    if acc:
                        out[(i, j, k, l)] = acc
    return out


def cojacobi_defect(delta: CobracketTensor) -> dict:
    """Co-Jacobi defect: the Jacobi defect of the dual bracket."""
    return jacobi_defect(delta.dual_bracket())


def mixed_jacobi_defect(mu_a: BracketTensor, mu_b: BracketTensor) -> dict:
    """Bilinear cross term: Jacobi(x*a + y*b) = x^2 J(a) + xy*this + y^2 J(b)."""
    mu_a.same_shape(mu_b)
    n = len(mu_a.basis)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    acc = mu_a._zero()
                    for m in range(n):
                        for first, second in ((mu_a, mu_b), (mu_b, mu_a)):
                            acc = acc + first.value(i, j, m) * second.value(m, k, l)
                            acc = acc + first.value(j, k, m) * second.value(m, i, l)
                            acc = acc + first.value(k, i, m) * second.value(m, j, l)
                    if acc:
                        out[(i, j, k, l)] = acc
    return out


def mixed_cojacobi_defect(d_a: CobracketTensor, d_b: CobracketTensor) -> dict:
    return mixed_jacobi_defect(d_a.dual_bracket(), d_b.dual_bracket())


def _ad_wedge(mu: BracketTensor, i, wedge) -> dict:
    """(ad_xi (x) id + id (x) ad_xi) applied to a wedge element."""
    out = {}
    for (a, b), w in wedge.items():
        for c, v in mu.bracket(i, a).items():
            _wedge_add(out, c, b, w * v)
        for c, v in mu.bracket(i, b).items():
            _wedge_add(out, a, c, w * v)
    return out


def cocycle_defect(mu: BracketTensor, delta: CobracketTensor) -> dict:
    """Classical compatibility defect per generator pair (i<j):

        delta([x_i, x_j]) - ad_{x_i} delta(x_j) + ad_{x_j} delta(x_i)

    with ad acting factorwise on wedges. All-zero iff (mu, delta) is a
    Lie bialgebra.
    """
    mu.same_shape(delta)
    n = len(mu.basis)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            acc = {}
            for m, c in mu.bracket(i, j).items():
                for (a, b), w in delta.wedge_of(m).items():
                    _wedge_add(acc, a, b, w * c)
            for (a, b), w in _ad_wedge(mu, i, delta.wedge_of(j)).items():
                _wedge_add(acc, a, b, -w)
            for (a, b), w in _ad_wedge(mu, j, delta.wedge_of(i)).items():
                _wedge_add(acc, a, b, w)
            if acc:
                out[(i, j)] = acc
    return out


# -- four-pair hypothesis report and family builder ---------------------------


@dataclass
class FourPairsReport:
    basis: Basis
    jacobi: dict = field(default_factory=dict)
    cojacobi: dict = field(default_factory=dict)
    mixed_mu: dict = field(default_factory=dict)
    mixed_delta: dict = field(default_factory=dict)
    cocycle: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failing_checks()

    def failing_checks(self):
        out = []
        for name, defects in self.jacobi.items():
            if defects:
                out.append(("jacobi", name))
        for name, defects in self.cojacobi.items():
            if defects:
                out.append(("cojacobi", name))
        if self.mixed_mu:
            out.append(("mixed-jacobi", "mu_100,mu_001"))
        if self.mixed_delta:
            out.append(("mixed-cojacobi", "delta_010,delta_001"))
        for name, defects in self.cocycle.items():
            if defects:
                out.append(("cocycle", name))
        return out


def check_four_pairs(mu_100, mu_001, delta_010, delta_001) -> FourPairsReport:
    """Hypotheses of the two-deformation construction: both brackets Lie,
    both cobrackets co-Lie, the mixed defects zero, and all four
    (bracket, cobracket) pairs compatible."""
    mu_100.same_shape(mu_001)
    delta_010.same_shape(delta_001)
    mu_100.same_shape(delta_010)
    report = FourPairsReport(basis=mu_100.basis)
    report.jacobi["mu_100"] = jacobi_defect(mu_100)
    report.jacobi["mu_001"] = jacobi_defect(mu_001)
    report.cojacobi["delta_010"] = cojacobi_defect(delta_010)
    report.cojacobi["delta_001"] = cojacobi_defect(delta_001)
    report.mixed_mu = mixed_jacobi_defect(mu_100, mu_001)
    report.mixed_delta = mixed_cojacobi_defect(delta_010, delta_001)
    for name, mu, delta in (
        ("mu_100,delta_010", mu_100, delta_010),
        ("mu_001,delta_010", mu_001, delta_010),
        ("mu_100,delta_001", mu_100, delta_001),
        ("mu_001,delta_001", mu_001, delta_001),
    ):
        report.cocycle[name] = cocycle_defect(mu, delta)
    return report


@dataclass
class DeformationFamily:
    mu: BracketTensor        # z' * mu_001 + t * mu_100
    delta: CobracketTensor   # z'' * delta_001 + h * delta_010
    param_names: tuple       # (z', t, z'', h)
    report: FourPairsReport


def build_family(
    mu_100, mu_001, delta_010, delta_001,
    param_names=("z1", "t", "z2", "h"),
    target=None,
) -> DeformationFamily:
    """The two linear pencils of the construction, as one object.

    param_names gives (z', t, z'', h). The returned tensors live over
    the target (params, order) context, which must contain all four
    names; by default the inputs' own context is reused.
    """
    report = check_four_pairs(mu_100, mu_001, delta_010, delta_001)
    if not report.ok:
        raise HypothesisError("four-pair hypothesis fails", report)
    zp, t, zpp, h = param_names
    if target is None:
        params, order = mu_100.params, mu_100.order
    else:
        params, order = tuple(target[0]), target[1]
    for name in param_names:
        if name not in params:
            raise InputError(f"family parameter {name!r} missing from context")

    def lift(tensor, cls, pname):
        mono = ScaleMonomial.parameter(params, pname)
        out = cls(tensor.basis, params, order)
        for key, value in tensor.entries.items():
            shifted = value.substitute({}, (params, order))
            out.entries[key] = mono.apply_to(shifted)
        return out

    mu = lift(mu_001, BracketTensor, zp)
    for key, value in lift(mu_100, BracketTensor, t).entries.items():
        mu.set_entry(key, value)
    delta = lift(delta_001, CobracketTensor, zpp)
    for key, value in lift(delta_010, CobracketTensor, h).entries.items():
        delta.set_entry(key, value)
    return DeformationFamily(mu=mu, delta=delta, param_names=param_names, report=report)


def cocycle_monomial_split(family: DeformationFamily) -> dict:
    """Collect the family's cocycle defect by parameter monomial in the
    four family parameters; the four slots are the pairwise defects."""
    defect = cocycle_defect(family.mu, family.delta)
    zp, t, zpp, h = family.param_names
    params = family.mu.params
    idx = {name: params.index(name) for name in family.param_names}
    split = {}
    for pair, wedge in defect.items():
        for key, poly in wedge.items():
            for exps, coeff in poly.terms.items():
                mono = tuple(exps[idx[name]] for name in family.param_names)
                split.setdefault(mono, {}).setdefault(pair, {})[key] = coeff
    return split
