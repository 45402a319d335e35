"""Satake diagrams, iota-root data and the quotient lattices they induce."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .exactq import LaurentPoly, q_pow
from .linalg import identity, integer_kernel, matmul, matvec, smith_normal_form, transpose, rat_inverse
from .rootdata import RootDatum, ValidationError


# -- admissibility axioms

def axiom_involution(rd: RootDatum, black, tau):
    """tau is an involution of I preserving the form and the black set."""
    n = rd.n
    if sorted(tau) != list(range(n)):
        return f"tau is not a permutation of the nodes: {tau}"
    for i in range(n):
        if tau[tau[i]] != i:
            return f"tau is not an involution at node {rd.nodes[i]}"
        for j in range(n):
            if rd.cartan.form[tau[i]][tau[j]] != rd.cartan.form[i][j]:
                return f"tau does not preserve i.j at ({rd.nodes[i]}, {rd.nodes[j]})"
    if {tau[i] for i in black} != set(black):
        return "tau does not preserve the black set"
    return None


def axiom_black_longest(rd: RootDatum, black, tau):
    """w_black(alpha_i) = -alpha_{tau i} for black i."""
    if not black:
        return None
    w = rd.longest_element(black)
    for i in black:
        img = matvec(w.matrixX, rd.roots[i])
        want = tuple(-x for x in rd.roots[tau[i]])
        if img != want:
            return f"w_black(alpha_{rd.nodes[i]}) = {img}, expected -alpha_{rd.nodes[tau[i]]} = {want}"
    return None


def axiom_araki(rd: RootDatum, black, tau):
    """White tau-fixed nodes pair evenly with 2 rho^vee of the black set."""
    if not black:
        return None
    two_rho = rd.two_rho_coroot(black)
    for j in range(rd.n):
        if j in black or tau[j] != j:
            continue
        v = rd.pair(two_rho, rd.roots[j])
        if v % 2:
            return (f"<rho_black^vee, alpha_{rd.nodes[j]}> = {v}/2 is not an integer "
                    f"at the tau-fixed white node {rd.nodes[j]}")
    return None


DEFAULT_AXIOMS = (axiom_involution, axiom_black_longest, axiom_araki)


@dataclass(frozen=True)
class SatakeDiagram:
    datum: RootDatum
    black: tuple   # node indices
    tau: tuple     # tau[i] = image index

    @property
    def white(self):
        return tuple(i for i in range(self.datum.n) if i not in self.black)

    def check(self, axioms=DEFAULT_AXIOMS):
        """List of (axiom name, message) for every failed axiom."""
        out = []
        for ax in axioms:
            msg = ax(self.datum, tuple(sorted(self.black)), tuple(self.tau))
            if msg:
                out.append((ax.__name__, msg))
        return out

    def validate(self, axioms=DEFAULT_AXIOMS):
        fails = self.check(axioms)
        if fails:
            raise ValidationError(fails[0][0], fails[0][1])
        return self

    def axiom_report(self):
        """Status of the two structural properties and of the third axiom."""
        two = self.check((axiom_involution, axiom_black_longest))
        third = self.check((axiom_araki,))
        return {"structural": not two, "araki": not third,
                "discrepancy": (not two) and bool(third)}


# -- parameters

@dataclass(frozen=True)
class Param:
    """varsigma_i = sign * q^exponent."""
    sign: int
    exponent: int = 0

    def value(self) -> LaurentPoly:
        return q_pow(self.exponent) * self.sign

    @property
    def bar(self) -> int:
        return self.sign


class XLattice:
    """X_iota = X / (id - theta)X with a canonical projection."""

    def __init__(self, theta):
        r = len(theta)
        a = [[int(i == j) - theta[i][j] for j in range(r)] for i in range(r)]
        u, d, v = smith_normal_form(a)
        self.U, self.D, self.V = u, d, v
        self.rank = r
        diag = [d[k][k] if k < len(d) and k < len(d[0]) else 0 for k in range(r)]
        self.diag = diag
        self.components = [k for k in range(r) if diag[k] != 1]
        self.moduli = [diag[k] for k in self.components]  # 0 means free
        odd = [m for m in self.moduli if m > 1 and m & (m - 1)]
        if odd:
            raise ValidationError("X_iota has torsion that is not a power of 2", odd)
        self.image_basis = [tuple(col) for col in transpose(a)]
        self._Uinv = [[int(x) for x in row] for row in rat_inverse(u)]

    @property
    def torsion(self):
        return sorted(m for m in self.moduli if m > 1)

    @property
    def free_rank(self):
        return sum(1 for m in self.moduli if m == 0)

    def invariants(self):
        """('Z/m' or 'Z') in canonical order: torsion first, then free."""
        return [f"Z/{m}" for m in self.torsion] + ["Z"] * self.free_rank

    def project(self, lam) -> tuple:
        ul = matvec(self.U, lam)
        out = []
        for k, m in zip(self.components, self.moduli):
            out.append(ul[k] % m if m else ul[k])
        return tuple(out)

    def lift(self, cls) -> tuple:
        full = [0] * self.rank
        for k, c in zip(self.components, cls):
            full[k] = c
        return matvec(self._Uinv, full)

    def in_image(self, lam) -> bool:
        return all(c == 0 for c in self.project(lam))

    def splitting_check(self, theta) -> bool:
        """After inverting 2, lam -> (lam - theta lam)/2 is a section of the
        inclusion of (id - theta)X; verify on the image generators."""
        for x in self.image_basis:
            tx = matvec(theta, x)
            half = tuple(a - b for a, b in zip(x, tx))
            if any(h % 2 for h in half) or tuple(h // 2 for h in half) != tuple(x):
                return False
        return True


@dataclass
class IRootDatum:
    satake: SatakeDiagram
    thetaX: tuple
    params: dict = field(default_factory=dict)   # node index -> Param
    name: str = ""

    @property
    def datum(self) -> RootDatum:
        return self.satake.datum

    @property
    def black(self):
        return tuple(sorted(self.satake.black))

    @property
    def white(self):
        return self.satake.white

    @property
    def tau(self):
        return self.satake.tau

    @cached_property
    def w_black(self):
        return self.datum.longest_element(self.black)

    @cached_property
    def thetaY(self):
        """Pairing-transpose: <theta_Y mu, lam> = <mu, theta_X lam>."""
        P = [list(r) for r in self.datum.pairing]
        Pinv = rat_inverse(P)
        m = matmul(matmul(P, [list(r) for r in self.thetaX]), Pinv)
        return tuple(tuple(int(x) for x in row) for row in transpose(m))

    def theta_X(self, lam):
        return matvec(self.thetaX, lam)

    def theta_Y(self, mu):
        return matvec(self.thetaY, mu)

    @cached_property
    def tauX(self):
        """tau on X as -w_black theta."""
        m = matmul(self.w_black.matrixX, self.thetaX)
        return tuple(tuple(-x for x in row) for row in m)

    @cached_property
    def tauY(self):
        """Adjoint of tau on X with respect to the pairing."""
        P = [list(r) for r in self.datum.pairing]
        m = matmul(matmul(P, [list(r) for r in self.tauX]), rat_inverse(P))
        return tuple(tuple(int(x) for x in row) for row in transpose(m))

    def tau_X(self, lam):
        return matvec(self.tauX, lam)

    def tau_Y(self, mu):
        return matvec(self.tauY, mu)

    @cached_property
    def xlattice(self) -> XLattice:
        return XLattice(self.thetaX)

    @cached_property
    def ylattice_fixed(self):
        r = self.datum.rankX
        a = [[self.thetaY[i][j] - int(i == j) for j in range(r)] for i in range(r)]
        return integer_kernel(a)

    def ipairing(self, mu, cls) -> int:
        """<mu, lam> for mu in Y^iota and any lift lam of the X_iota class."""
        if tuple(self.theta_Y(mu)) != tuple(mu):
            raise ValidationError("mu is not fixed by theta", tuple(mu))
        return self.datum.pair(mu, self.xlattice.lift(cls))

    def two_rho_black_pairing(self, i) -> int:
        return self.datum.two_rho_pairing(self.black, i) if self.black else 0

    def param(self, i) -> Param:
        return self.params.get(i, Param(1, 0))

    def sbar(self, i) -> int:
        return self.param(i).sign

    def validate(self):
        rd = self.datum
        r = rd.rankX
        th = self.thetaX
        sq = matmul(th, th)
        if sq != identity(r):
            raise ValidationError("theta is not an involution on X", th)
        w = self.w_black.matrixX
        for i in range(rd.n):
            want = tuple(-x for x in matvec(w, rd.roots[self.tau[i]]))
            got = matvec(th, rd.roots[i])
            if got != want:
                raise ValidationError("theta(alpha_i) != -w_black alpha_{tau i}", (rd.nodes[i], got, want))
        ty = self.thetaY
        if matmul(ty, ty) != identity(r):
            raise ValidationError("induced theta on Y is not an involution", ty)
        for i in range(rd.n):
            want = tuple(-x for x in matvec(self.w_black.matrixY, rd.coroots[self.tau[i]]))
            got = matvec(ty, rd.coroots[i])
            if got != want:
                raise ValidationError("theta_Y(alpha_i^vee) != -w_black alpha_{tau i}^vee", (rd.nodes[i], got, want))
        self.xlattice  # raises on odd torsion
        return self

    def param_violations(self):
        """Constraint violations for the parameters at q = 1."""
        rd = self.datum
        out = []
        for i in self.white:
            ti = self.tau[i]
            if rd.pair(rd.coroots[i], self.theta_X(rd.roots[i])) == 0 and self.sbar(i) != self.sbar(ti):
                out.append(("sbar_i = sbar_tau(i) when <alpha_i^vee, theta alpha_i> = 0",
                            (rd.nodes[i], self.sbar(i), self.sbar(ti))))
            want = -1 if self.two_rho_black_pairing(i) % 2 else 1
            if self.sbar(i) * self.sbar(ti) != want:
                out.append(("sbar_i sbar_tau(i) = (-1)^<2 rho_black^vee, alpha_i>",
                            (rd.nodes[i], self.sbar(i), self.sbar(ti), want)))
        for i in self.params:
            if i in self.black:
                out.append(("parameters are indexed by white nodes only", rd.nodes[i]))
        return out

    def validate_params(self):
        v = self.param_violations()
        if v:
            raise ValidationError(v[0][0], v[0][1])
        return self

    def with_params(self, params) -> "IRootDatum":
        return IRootDatum(self.satake, self.thetaX, dict(params), self.name)

    def pairing_zero_nodes(self):
        rd = self.datum
        return [i for i in self.white if rd.pair(rd.coroots[i], self.theta_X(rd.roots[i])) == 0]


def default_params(theta_datum: IRootDatum) -> dict:
    """Sign +1 and exponent 0 wherever allowed; otherwise the later node of
    each tau-orbit takes the sign forced by the constraints."""
    rd = theta_datum.datum
    params = {}
    for i in theta_datum.white:
        ti = theta_datum.tau[i]
        want = -1 if theta_datum.two_rho_black_pairing(i) % 2 else 1
        if ti in params:
            params[i] = Param(params[ti].sign * want, 0)
        elif ti == i:
            if want != 1:
                raise ValidationError("no sign satisfies sbar_i^2 = -1", rd.nodes[i])
            params[i] = Param(1, 0)
        else:
            params[i] = Param(1, 0)
    return params


def build_theta(diagram: SatakeDiagram, thetaX=None, params=None, name="") -> IRootDatum:
    rd = diagram.datum
    diagram.validate()
    w = rd.longest_element(tuple(sorted(diagram.black)))
    images = [tuple(-x for x in matvec(w.matrixX, rd.roots[diagram.tau[i]])) for i in range(rd.n)]
    if thetaX is None:
        thetaX = rd.solve_X_from_roots(images)
    else:
        thetaX = tuple(tuple(int(x) for x in row) for row in thetaX)
    ird = IRootDatum(diagram, thetaX, {}, name or rd.name)
    ird.validate()
    ird.params = dict(params) if params is not None else default_params(ird)
    ird.validate_params()
    return ird


def xlattice_summary(ird: IRootDatum) -> dict:
    xl = ird.xlattice
    return {
        "invariants": xl.invariants(),
        "torsion": xl.torsion,
        "free_rank": xl.free_rank,
        "image_generators": [list(v) for v in xl.image_basis if any(v)],
        "Y_iota_basis": [list(v) for v in ird.ylattice_fixed],
        "splitting_after_inverting_2": xl.splitting_check(ird.thetaX),
    }
