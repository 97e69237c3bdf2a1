"""
Familles d'instances (exemples de référence et familles paramétrées) et
génération d'instances d'attaque à vérité scellée.

Les isogénies secrètes sont des chaînes de Vélu de noyau E[𝔞] pour un idéal 𝔞
de O de norme d : elles sont orientées par construction. L'orientation du
codomaine est transportée sur E'[m] par M' = Φ M Φ^{-1}.
"""
import logging
import random
from dataclasses import dataclass, field, replace
from itertools import product
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError
from sympy import factorint, isprime

from ..core.config import settings
from ..core.errors import (
    BadKernelOrder,
    BudgetExceeded,
    CompositeModulus,
    MalformedInstanceError,
    NoSplitPrimeKernel,
    RootsOfUnityMissing,
    TorsionNotRational,
    UnknownEndomorphism,
    UnknownFamily,
)
from ..models.instance import (
    AttackInstanceModel,
    CurveModel,
    FieldModel,
    InstanceSpec,
    OrderElementModel,
    OrderModel,
    OrientationModel,
    PointModel,
    SealedModel,
)
from .curve import (
    Curve,
    CurvePoint,
    Isogeny,
    count_points,
    frobenius_trace,
    identity_isogeny,
    isogeny_from_kernel,
    point_order,
    subgroup_span,
    torsion_basis,
)
from .ffield import FieldDesc, FieldElement, make_field
from .modular import Matrix, is_unit, mat_from_columns, mat_vec, solve_linear_2x2
from .orientation import (
    EndoExpr,
    Orientation,
    module_generator,
    orientation_at_level,
    orientation_from_endo,
    orientation_from_matrix,
    prime_type,
    rebase,
    torsion_matrix,
    transport,
)
from .qorder import OrderDesc, OrderElement

logger = logging.getLogger("sesqui.instances")

# Points de l'exemple sur F_541 et sur F_{101^2} (coefficients du degré 0 au degré 1)
F541_P = (109, 208)
F541_Q = (53, 195)
F101_MODULUS = (2, -4, 1)
F101_POINT = ((16, 41), (19, 39))
F101_PI_POINT = ((79, 60), (74, 62))

# Noms des points de charge utile situés sur E'
IMAGE_KEYS = ("phi_R", "P_img", "Q_img")


@dataclass(frozen=True)
class BaseCurve:
    """Courbe orientée de départ d'une famille."""
    family: str
    orient: Orientation
    expr: EndoExpr
    second: Optional[Orientation] = None
    params: Tuple[Tuple[str, str], ...] = ()

    @property
    def curve(self) -> Curve:
        return self.orient.curve

    @property
    def m(self) -> int:
        return self.orient.m

    @property
    def order(self) -> OrderDesc:
        return self.orient.order


@dataclass(frozen=True)
class SealedTruth:
    kernel: Tuple[CurvePoint, ...]
    isogeny: Isogeny
    matrix: Matrix
    lam: Optional[OrderElement] = None
    norm: Optional[int] = None
    cyclic: bool = True


@dataclass(frozen=True)
class AttackInstance:
    variant: str
    family: str
    seed: int
    degree: int
    orient: Orientation
    orient_image: Orientation
    generator: Optional[CurvePoint] = None
    generator_image: Optional[CurvePoint] = None
    payload: Dict[str, CurvePoint] = field(default_factory=dict)
    second: Optional[Orientation] = None
    second_image: Optional[Orientation] = None
    params: Dict[str, str] = field(default_factory=dict)
    sealed: Optional[SealedTruth] = None

    @property
    def curve(self) -> Curve:
        return self.orient.curve

    @property
    def curve_image(self) -> Curve:
        return self.orient_image.curve

    @property
    def m(self) -> int:
        return self.orient.m

    def view(self) -> "AttackInstance":
        """L'instance telle que la voient les attaques : sans bloc scellé."""
        return replace(self, sealed=None)


# Familles


def _with_order(E: Curve) -> Curve:
    return Curve(E.field, E.a, E.b, count_points(E))


def example_f541() -> BaseCurve:
    """y^2 = x^3 + x sur F_541, base (109, 208), (53, 195) de E[5], τ = i."""
    F = make_field(541)
    E = _with_order(Curve.from_ints(F, 1, 0))
    basis = (E.point(*F541_P), E.point(*F541_Q))
    expr = EndoExpr.parse("i")
    orient = orientation_from_endo(E, 5, basis, expr, OrderDesc(0, 1), conductor=1)
    return BaseCurve("f541", orient, expr, params=(("p", "541"), ("m", "5")))


def example_f101() -> BaseCurve:
    """
    y^2 = x^3 + 30x + 2 sur F_{101^2} = F_101[a]/(a^2 - 4a + 2), m = 3.

    Orientation principale par Z[π] (conducteur relatif 2), seconde par Z[π^2]
    (conducteur relatif 36), toutes deux sur la base (P, π(P)).
    """
    F = make_field(101, 2, F101_MODULUS)
    E = _with_order(Curve.from_ints(F, 30, 2))
    ap = frobenius_trace(E)
    basis = (E.point(*F101_POINT), E.point(*F101_PI_POINT))
    pi = EndoExpr.parse("pi")
    orient = orientation_from_endo(E, 3, basis, pi, OrderDesc(ap, 101), conductor=2)
    second = orientation_from_endo(E, 3, basis, "pi*pi", OrderDesc(ap * ap - 202, 101 * 101), conductor=36)
    return BaseCurve("f101", orient, pi, second, (("p", "101"), ("m", "3")))


def wouter(r: int, rng: Optional[random.Random] = None) -> BaseCurve:
    """p = 4·3^r - 1, E : y^2 = x^3 + x sur F_{p^2}, τ = (i + π)/2, m = 3^r."""
    p = 4 * 3 ** r - 1
    if r < 1 or not isprime(p):
        raise CompositeModulus(f"4·3^{r} - 1 = {p} n'est pas premier")
    F = make_field(p, 2, (1, 0, 1))
    E = Curve.from_ints(F, 1, 0, (p + 1) ** 2)
    m = 3 ** r
    expr = EndoExpr.parse("(i + pi)/2")
    orient = orientation_from_endo(E, m, torsion_basis(E, m, rng), expr, OrderDesc(0, m), conductor=1)
    return BaseCurve("wouter", orient, expr, params=(("r", str(r)), ("p", str(p)), ("m", str(m))))


def gaussian(p: int, m: int, rng: Optional[random.Random] = None, a: Optional[int] = None) -> BaseCurve:
    """
    Courbe y^2 = x^3 + ax orientée par Z[i], avec E[m] rationnelle.

    Args:
        p: caractéristique ; F_p si p ≡ 1 (mod 4), F_{p^2} = F_p[i] sinon
        m: niveau de torsion
        a: coefficient imposé, sinon le plus petit a >= 1 convenable
    """
    k = 1 if p % 4 == 1 else 2
    F = make_field(p, k, None if k == 1 else (1, 0, 1))
    if (F.q - 1) % m:
        raise RootsOfUnityMissing(f"μ_{m} n'est pas contenu dans {F}")
    candidates = [a] if a is not None else range(1, settings.GENERATOR_SEARCH_BUDGET + 1)
    for coef in candidates:
        if coef % p == 0:
            continue
        E = _with_order(Curve.from_ints(F, coef, 0))
        if E.order % (m * m):
            continue
        try:
            basis = torsion_basis(E, m, rng)
        except TorsionNotRational:
            continue
        expr = EndoExpr.parse("i")
        orient = orientation_from_endo(E, m, basis, expr, OrderDesc(0, 1), conductor=1)
        second = None
        if k == 2:
            # p ≡ 3 (mod 4) : E est supersingulière et π_p^2 = -p
            second = orientation_from_endo(E, m, basis, "pi", OrderDesc(0, p))
        logger.debug(f"Famille gaussienne: a = {coef}, #E = {E.order}")
        return BaseCurve("gaussian", orient, expr, second, (("p", str(p)), ("m", str(m)), ("a", str(coef))))
    logger.error(f"Aucune courbe y^2 = x^3 + ax sur {F} avec E[{m}] rationnelle")
    raise TorsionNotRational(f"aucun a dans le budget ne rend E[{m}] rationnelle sur {F}")


def custom(spec: InstanceSpec, rng: Optional[random.Random] = None) -> BaseCurve:
    required = ("p", "a", "b", "m", "expr", "t", "n")
    missing = [name for name in required if getattr(spec, name) is None]
    if missing:
        raise MalformedInstanceError(f"paramètres manquants pour la famille custom: {missing}")
    k = spec.k or 1
    F = make_field(spec.p, k, spec.modulus)
    E = _with_order(Curve.from_ints(F, spec.a, spec.b))
    expr = EndoExpr.parse(spec.expr)
    orient = orientation_from_endo(E, spec.m, torsion_basis(E, spec.m, rng), expr, OrderDesc(spec.t, spec.n),
                                   conductor=spec.conductor)
    return BaseCurve("custom", orient, expr, params=(("p", str(spec.p)), ("m", str(spec.m))))


def base_curve(spec: InstanceSpec, rng: Optional[random.Random] = None) -> BaseCurve:
    if spec.family == "f541":
        return example_f541()
    if spec.family == "f101":
        return example_f101()
    if spec.family == "wouter":
        return wouter(spec.r or 3, rng)
    if spec.family == "gaussian":
        return gaussian(spec.p or 541, spec.m or 5, rng, spec.a)
    if spec.family == "custom":
        return custom(spec, rng)
    raise UnknownFamily(f"famille inconnue: {spec.family}")


# Noyaux orientés


def _poly_roots(order: OrderDesc, modulus: int) -> List[int]:
    return [c for c in range(modulus) if (c * c - order.t * c + order.n) % modulus == 0]


def _component_choices(order: OrderDesc, ell: int, e: int) -> Tuple[int, List[List[OrderElement]]]:
    """Niveau de torsion et générateurs des idéaux de norme ell^e."""
    kind = prime_type(order, ell)
    tau = order.tau
    if kind == "inert":
        if e % 2:
            raise NoSplitPrimeKernel(f"{ell} est inerte dans O : aucun idéal de norme {ell}^{e}",
                                     prime=ell, kind=kind)
        half = ell ** (e // 2)
        return half, [[order(half)]]
    if kind == "ramified":
        c = _poly_roots(order, ell)[0]
        half = ell ** (e // 2)
        if e % 2 == 0:
            return half, [[order(half)]]
        return half * ell, [[order(half * ell), (tau - c) * half]]
    level = ell ** e
    return level, [[order(level), tau - c] for c in _poly_roots(order, level)]


def _kernel_points(orient: Orientation, generators: Sequence[OrderElement]) -> List[CurvePoint]:
    L = orient.m
    matrices = [orient.element_matrix(beta) for beta in generators]
    return [orient.point((u, v)) for u in range(L) for v in range(L)
            if all(mat_vec(M, (u, v), L) == (0, 0) for M in matrices)]


def oriented_kernels(base: BaseCurve, d: int, rng: Optional[random.Random] = None) -> List[Tuple[CurvePoint, ...]]:
    """Tous les noyaux E[𝔞] pour les idéaux 𝔞 de norme d, dans un ordre déterministe."""
    E = base.curve
    if d == 1:
        return [(E.infinity,)]
    components = []
    for ell, e in sorted(factorint(d).items()):
        level, choices = _component_choices(base.order, ell, e)
        try:
            local = orientation_at_level(E, level, base.expr, base.order, rng)
        except TorsionNotRational:
            raise NoSplitPrimeKernel(f"E[{level}] n'est pas rationnelle : noyau d'ordre {ell}^{e} inaccessible",
                                     prime=ell)
        components.append([_kernel_points(local, gens) for gens in choices])
    kernels = []
    for combo in product(*components):
        group = subgroup_span([pt for pts in combo for pt in pts], E)
        if len(group) != d:
            logger.error(f"Noyau de cardinal {len(group)} au lieu de {d}")
            raise NoSplitPrimeKernel(f"l'idéal de norme {d} n'a pas un noyau d'ordre {d} (orientation non primitive)")
        kernels.append(group)
    return kernels


def _check_degree(d: int, m: int) -> None:
    if gcd(d, m) != 1:
        raise BadKernelOrder(f"le degré {d} n'est pas premier à m = {m}")
    if d > settings.oracle_degree_budget:
        raise BudgetExceeded(f"degré {d} au-delà du budget {settings.oracle_degree_budget}")
    if d > 1 and max(factorint(d)) > settings.ORACLE_MAX_PRIME:
        raise BudgetExceeded(f"facteur premier de {d} au-delà de {settings.ORACLE_MAX_PRIME}")


def _complement(orient: Orientation, P: CurvePoint, rng: random.Random) -> CurvePoint:
    """Point H tel que (P, H) soit une base de E[m]."""
    m = orient.m
    p = orient.coords(P)
    while True:
        w = (rng.randrange(m), rng.randrange(m))
        if is_unit(p[0] * w[1] - p[1] * w[0], m):
            return orient.point(w)


def _random_unit(m: int, rng: random.Random) -> int:
    while True:
        u = rng.randrange(1, m) if m > 1 else 0
        if gcd(u, m) == 1:
            return u


def hidden_lambda(orient: Orientation, orient_image: Orientation, matrix: Matrix,
                  P: CurvePoint, P_image: CurvePoint) -> OrderElement:
    """λ avec φP = [λ]P', lu sur la matrice Φ de φ."""
    m = orient.m
    target = mat_vec(matrix, orient.coords(P), m)
    p2 = orient_image.coords(P_image)
    A = mat_from_columns(p2, orient_image.apply_coords(orient.order.tau, p2), m)
    solutions = solve_linear_2x2(A, target, m)
    if not solutions:
        raise MalformedInstanceError("φP n'est pas dans le O-module engendré par P'")
    a, b = solutions[0]
    return orient.order(a, b)


def _respects(second: Orientation, phi: Isogeny, basis2) -> Optional[Orientation]:
    """Orientation seconde transportée, si φ la respecte (vérifiée sur E')."""
    moved = transport(second, phi, basis2)
    E2 = phi.codomain
    if second.endo is None or not E2.coefficients_in_prime_field():
        return None
    try:
        direct = orientation_from_endo(E2, second.m, basis2, second.endo, second.order)
    except (UnknownEndomorphism, MalformedInstanceError):
        return None
    return moved if direct.matrix == moved.matrix else None


def gen_instance(spec: InstanceSpec, seed: int) -> AttackInstance:
    """
    Construit une instance d'attaque déterministe pour la graine donnée.

    Args:
        spec: famille, paramètres, degré d et variante
        seed: graine de l'unique générateur pseudo-aléatoire
    """
    rng = random.Random(seed)
    base = base_curve(spec, rng)
    d, m = spec.degree, base.m
    _check_degree(d, m)
    E = base.curve
    kernels = oriented_kernels(base, d, rng)
    second_image = None
    if spec.variant == "two-orient":
        if base.second is None:
            raise UnknownEndomorphism(f"la famille {spec.family} n'a pas de seconde orientation")
        order_idx = list(range(len(kernels)))
        rng.shuffle(order_idx)
        found = None
        for idx in order_idx[:settings.GENERATOR_SEARCH_BUDGET]:
            phi = isogeny_from_kernel(kernels[idx]) if d > 1 else identity_isogeny(E)
            basis2 = torsion_basis(phi.codomain, m, rng)
            second_image = _respects(base.second, phi, basis2)
            if second_image is not None:
                found = (kernels[idx], phi, basis2)
                break
        if found is None:
            raise NoSplitPrimeKernel(f"aucun noyau de degré {d} ne respecte les deux orientations")
        kernel, phi, basis2 = found
    else:
        kernel = kernels[rng.randrange(len(kernels))]
        phi = isogeny_from_kernel(kernel) if d > 1 else identity_isogeny(E)
        basis2 = torsion_basis(phi.codomain, m, rng)

    orient = base.orient
    P = module_generator(orient, rng)
    payload: Dict[str, CurvePoint] = {}
    if spec.variant == "diagonal":
        H = _complement(orient, P, rng)
        orient = rebase(orient, (P, H))
        payload["P_img"] = _random_unit(m, rng) * phi(P)
        payload["Q_img"] = _random_unit(m, rng) * phi(H)
    elif spec.variant == "sidh1":
        R = orient.random_point(rng)
        payload["R"] = R
        payload["phi_R"] = phi(R)
    orient_image = transport(orient, phi, basis2)
    P_image = module_generator(orient_image, rng)
    matrix = torsion_matrix(phi, orient.basis, basis2, m)
    lam = hidden_lambda(orient, orient_image, matrix, P, P_image)
    cyclic = d == 1 or any(point_order(R, d) == d for R in kernel)
    sealed = SealedTruth(tuple(kernel), phi, matrix, lam, lam.norm() % m, cyclic)
    params = dict(base.params)
    params["variant"] = spec.variant
    inst = AttackInstance(
        variant=spec.variant,
        family=spec.family,
        seed=seed,
        degree=d,
        orient=orient,
        orient_image=orient_image,
        generator=P,
        generator_image=P_image,
        payload=payload,
        second=base.second if spec.variant == "two-orient" else None,
        second_image=second_image,
        params=params,
        sealed=sealed,
    )
    logger.info(f"Instance {spec.family}/{spec.variant} générée: d = {d}, m = {m}, graine {seed}")
    return inst


# Sérialisation


def _ints(values) -> List[str]:
    return [str(int(v)) for v in values]


def field_to_model(F: FieldDesc) -> FieldModel:
    return FieldModel(p=str(F.p), k=F.k, modulus=_ints(F.modulus))


def field_from_model(fm: FieldModel) -> FieldDesc:
    return make_field(int(fm.p), fm.k, [int(c) for c in fm.modulus])


def element_to_list(x: FieldElement) -> List[str]:
    return _ints(x.coeffs)


def point_to_model(R: CurvePoint) -> PointModel:
    if R.is_infinity:
        return PointModel(inf=True)
    return PointModel(x=element_to_list(R.x), y=element_to_list(R.y))


def point_from_model(E: Curve, pm: PointModel) -> CurvePoint:
    if pm.inf:
        return E.infinity
    return E.point([int(c) for c in pm.x], [int(c) for c in pm.y])


def curve_to_model(E: Curve) -> CurveModel:
    return CurveModel(a=element_to_list(E.a), b=element_to_list(E.b), field=field_to_model(E.field),
                      order=str(E.order) if E.order is not None else None)


def curve_from_model(cm: CurveModel) -> Curve:
    F = field_from_model(cm.field)
    order = int(cm.order) if cm.order is not None else None
    return Curve(F, F([int(c) for c in cm.a]), F([int(c) for c in cm.b]), order)


def _matrix_to_model(M: Matrix) -> List[List[str]]:
    return [_ints(row) for row in M]


def _matrix_from_model(rows) -> Matrix:
    return ((int(rows[0][0]), int(rows[0][1])), (int(rows[1][0]), int(rows[1][1])))


def orientation_to_model(orient: Orientation) -> OrientationModel:
    return OrientationModel(
        m=str(orient.m),
        basis=[point_to_model(R) for R in orient.basis],
        M_tau=_matrix_to_model(orient.matrix),
        order=OrderModel(t=str(orient.order.t), n=str(orient.order.n)),
        conductor_meta=str(orient.conductor) if orient.conductor is not None else None,
        endo=orient.endo.source if orient.endo is not None else None,
    )


def orientation_from_model(E: Curve, om: OrientationModel) -> Orientation:
    basis = tuple(point_from_model(E, pm) for pm in om.basis)
    order = OrderDesc(int(om.order.t), int(om.order.n))
    conductor = int(om.conductor_meta) if om.conductor_meta is not None else None
    orient = orientation_from_matrix(E, int(om.m), basis, _matrix_from_model(om.M_tau), order, conductor)
    if om.endo:
        orient = replace(orient, endo=EndoExpr.parse(om.endo))
    return orient


def instance_to_model(inst: AttackInstance) -> AttackInstanceModel:
    sealed = None
    if inst.sealed is not None:
        s = inst.sealed
        sealed = SealedModel(
            kernel=[point_to_model(R) for R in s.kernel],
            matrix=_matrix_to_model(s.matrix),
            lam=OrderElementModel(a=str(s.lam.a), b=str(s.lam.b)) if s.lam is not None else None,
            norm=str(s.norm) if s.norm is not None else None,
            cyclic=s.cyclic,
        )
    return AttackInstanceModel(
        variant=inst.variant,
        family=inst.family,
        seed=inst.seed,
        degree=str(inst.degree),
        params=dict(inst.params),
        curve=curve_to_model(inst.curve),
        curve_image=curve_to_model(inst.curve_image),
        orientation=orientation_to_model(inst.orient),
        orientation_image=orientation_to_model(inst.orient_image),
        second=orientation_to_model(inst.second) if inst.second is not None else None,
        second_image=orientation_to_model(inst.second_image) if inst.second_image is not None else None,
        generator=point_to_model(inst.generator) if inst.generator is not None else None,
        generator_image=point_to_model(inst.generator_image) if inst.generator_image is not None else None,
        payload={name: point_to_model(R) for name, R in inst.payload.items()},
        sealed=sealed,
    )


def instance_from_model(model: AttackInstanceModel) -> AttackInstance:
    E = curve_from_model(model.curve)
    E2 = curve_from_model(model.curve_image)
    orient = orientation_from_model(E, model.orientation)
    orient_image = orientation_from_model(E2, model.orientation_image)
    payload = {
        name: point_from_model(E2 if name in IMAGE_KEYS else E, pm)
        for name, pm in model.payload.items()
    }
    sealed = None
    if model.sealed is not None:
        s = model.sealed
        kernel = tuple(point_from_model(E, pm) for pm in s.kernel)
        phi = isogeny_from_kernel(kernel) if len(kernel) > 1 else identity_isogeny(E)
        lam = orient.order(int(s.lam.a), int(s.lam.b)) if s.lam is not None else None
        sealed = SealedTruth(kernel, phi, _matrix_from_model(s.matrix), lam,
                             int(s.norm) if s.norm is not None else None, s.cyclic)
    return AttackInstance(
        variant=model.variant,
        family=model.family,
        seed=model.seed,
        degree=int(model.degree),
        orient=orient,
        orient_image=orient_image,
        generator=point_from_model(E, model.generator) if model.generator is not None else None,
        generator_image=point_from_model(E2, model.generator_image) if model.generator_image is not None else None,
        payload=payload,
        second=orientation_from_model(E, model.second) if model.second is not None else None,
        second_image=orientation_from_model(E2, model.second_image) if model.second_image is not None else None,
        params=dict(model.params),
        sealed=sealed,
    )


def dump_instance(inst: AttackInstance) -> str:
    return instance_to_model(inst).model_dump_json(indent=2)


def save_instance(inst: AttackInstance, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_instance(inst) + "\n", encoding="utf-8")


def load_instance(path: Union[str, Path]) -> AttackInstance:
    try:
        model = AttackInstanceModel.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        logger.error(f"Lecture de l'instance {path} impossible: {str(e)}")
        raise MalformedInstanceError(f"instance illisible: {path}")
    return instance_from_model(model)
