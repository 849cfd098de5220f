from fractions import Fraction

import mpmath as mp
import pytest

from starklab.hecke import hecke_lattice
from starklab.numerics import PrecisionCtx, branch_sqrt_neg_iv
from starklab.pseudolattice import Pseudolattice
from starklab.quadfield import FieldCtx, QuadElem, fundamental_unit
from starklab.theta import (
    ComplexThetaSpec,
    RMThetaSpec,
    fourier_gaussian_pair,
    functional_equation_Theta,
    functional_equation_theta,
    hecke_average_check,
    poisson_check,
    theta_complex,
    theta_rm,
)

mp.mp.dps = 50

CTX = PrecisionCtx(128, 1e-30)
FAST = PrecisionCtx(96, 1e-14)

SUITE_D = [2, 3, 5]
SUITE_V = ["1j", "2j", "0.5+1j"]


def maximal_lattice(D):
    F = FieldCtx(D)
    return Pseudolattice(F, F.elem(1), F.omega)


def positive_unit(D):
    u = fundamental_unit(D)
    return u if u.is_totally_positive() else u * u


def standard_spec(D, v, eta=1, ctx=CTX):
    L = maximal_lattice(D)
    with ctx.workprec():
        spec = RMThetaSpec(
            L=L,
            l0=L.field.elem(1),
            m0=L.field.elem(0),
            eta=eta,
            epsU=positive_unit(D),
            v=mp.mpc(v),
        )
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# complex theta: classical value and the inversion identity
# ---------------------------------------------------------------------------


def test_theta_complex_against_brute_force_sum():
    # plain double loop over a large box, summed in raw iteration order,
    # with no tail-bound or enumeration logic shared with the implementation
    from starklab.hecke import scalar_product

    with CTX.workprec():
        g1, g2 = mp.mpc(1), mp.mpc("0.3", "1")
        lam0, mu0 = mp.mpc("0.3", "0.1"), mp.mpc("0.2")
        eta, v = mp.mpc(1, 2), mp.mpc("0.5", "1")
        spec = ComplexThetaSpec(lattice=(g1, g2), lambda0=lam0, mu0=mu0,
                                eta=eta, v=v)
        val = theta_complex(spec, CTX).value
        brute = mp.mpc(0)
        for m in range(-45, 46):
            for n in range(-45, 46):
                lam = m * g1 + n * g2
                z = lam0 + lam
                modsq = z.real ** 2 + z.imag ** 2
                brute += (
                    scalar_product(z, eta)
                    * mp.expjpi(v * modsq)
                    * mp.expjpi(-2 * scalar_product(lam, mu0))
                )
        brute *= mp.expjpi(-scalar_product(lam0, mu0))
        assert abs(val - brute) < 1e-28


def test_theta_complex_tail_bound_honest():
    with CTX.workprec():
        spec = ComplexThetaSpec(
            lattice=(mp.mpc(1), mp.mpc(0, 1)),
            lambda0=mp.mpc("0.3", "0.1"),
            mu0=mp.mpc("0.2"),
            eta=mp.mpc(1, 1),
            v=mp.mpc("0.5", "1"),
        )
        lo = theta_complex(spec, PrecisionCtx(96, 1e-18))
        hi = theta_complex(spec, PrecisionCtx(160, 1e-40))
        assert abs(lo.value - hi.value) < 10 * lo.tail_bound + mp.mpf("1e-17")


@pytest.mark.parametrize("D", SUITE_D)
@pytest.mark.parametrize("vtxt", SUITE_V)
def test_functional_equation_complex(D, vtxt):
    with CTX.workprec():
        v = mp.mpc(complex(vtxt))
        for t in (0, mp.mpf("0.7")):
            lat = hecke_lattice(maximal_lattice(D), t, CTX)
            spec = ComplexThetaSpec(
                lattice=lat,
                lambda0=lat.embed_point(FieldCtx(D).elem(1), CTX),
                mu0=0,
                eta=1,
                v=v,
            )
            assert functional_equation_theta(spec, CTX) < 1e-10


@pytest.mark.parametrize("D", SUITE_D)
@pytest.mark.parametrize("vtxt", SUITE_V)
def test_functional_equation_unit_averaged(D, vtxt):
    with CTX.workprec():
        spec = standard_spec(D, complex(vtxt))
        assert functional_equation_Theta(spec, CTX) < 1e-10


# ---------------------------------------------------------------------------
# Poisson summation
# ---------------------------------------------------------------------------


def test_poisson_on_square_lattice():
    with CTX.workprec():
        for v in (mp.mpc(0, 1), mp.mpc("0.5", "1")):
            for shift in ((0, 0), (mp.mpf("0.3"), mp.mpf("-0.2"))):
                r = poisson_check((mp.mpc(1), mp.mpc(0, 1)), v, mp.mpc(1, 2),
                                  shift=shift, ctx=CTX)
                assert r < 1e-12


@pytest.mark.parametrize("D", SUITE_D)
@pytest.mark.parametrize("t", ["0", "0.7"])
def test_poisson_on_flowed_field_lattices(D, t):
    with CTX.workprec():
        lat = hecke_lattice(maximal_lattice(D), mp.mpf(t), CTX)
        for shift in ((0, 0), (mp.mpf("0.25"), mp.mpf("0.1"))):
            r = poisson_check(lat, mp.mpc(0, 1), mp.mpc(1), shift=shift, ctx=CTX)
            assert r < 1e-12


def test_fourier_transform_closed_form_matches_quadrature():
    with FAST.workprec():
        for eta in (mp.mpc(1), mp.mpc(1, 2)):
            for y in (mp.mpc("0.5", "0.25"), mp.mpc(0, 1)):
                closed, quad = fourier_gaussian_pair(eta, mp.mpc(0, 1), y, FAST)
                assert abs(closed - quad) < 1e-10


# ---------------------------------------------------------------------------
# unit-averaged theta: slice structure and Hecke averaging
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("D", SUITE_D)
def test_squared_unit_doubles_the_average(D):
    # averaging over the index-2 subgroup generated by epsU^2 enumerates two
    # copies of each <epsU>-orbit
    with CTX.workprec():
        spec = standard_spec(D, 1j)
        big = RMThetaSpec(
            L=spec.L, l0=spec.l0, m0=spec.m0, eta=spec.eta,
            epsU=spec.epsU * spec.epsU, v=spec.v,
        )
        big.validate()
        v1 = theta_rm(spec, CTX)
        v2 = theta_rm(big, CTX)
        assert abs(v2.value - 2 * v1.value) < 1e-25 + 10 * (v1.tail_bound + v2.tail_bound)


@pytest.mark.parametrize("D", SUITE_D)
@pytest.mark.parametrize("vtxt", SUITE_V)
def test_hecke_averaging_identity(D, vtxt):
    with FAST.workprec():
        spec = standard_spec(D, complex(vtxt), ctx=FAST)
        assert hecke_average_check(spec, FAST) < 1e-8


def test_spec_validation_rejects_bad_data():
    L = maximal_lattice(5)
    F = L.field
    good = standard_spec(5, 1j)
    with pytest.raises(ValueError):
        RMThetaSpec(L=L, l0=F.elem(1), m0=F.elem(0), eta=1,
                    epsU=good.epsU, v=mp.mpc(0, -1)).validate()
    with pytest.raises(ValueError):
        # norm -1 unit
        RMThetaSpec(L=L, l0=F.elem(1), m0=F.elem(0), eta=1,
                    epsU=fundamental_unit(5), v=mp.mpc(0, 1)).validate()
    with pytest.raises(ValueError):
        # coset not stabilized: l0 with denominator 3, eps - 1 not in 3*L
        RMThetaSpec(L=L, l0=QuadElem(5, Fraction(1, 3)),
                    m0=F.elem(0), eta=1, epsU=good.epsU, v=mp.mpc(0, 1)).validate()


# ---------------------------------------------------------------------------
# nondegenerate configurations (nonvanishing theta)
# ---------------------------------------------------------------------------
# For l0 in L the coset is negation-symmetric and the averaged theta
# vanishes identically, so the identities above hold as 0 = 0.  The shift
# l0 = 1/11 on the D = 5 maximal lattice breaks that symmetry: no unit
# congruent to 1 mod p11 is totally negative, and the value is nonzero.


def nondegenerate_spec(v):
    from starklab.quadfield import QuadIdeal, unit_mod_f

    F = FieldCtx(5)
    L = maximal_lattice(5)
    f = QuadIdeal.from_generators(F, [11, F.omega + 3])
    ud = unit_mod_f(F, f)
    spec = RMThetaSpec(L=L, l0=F.elem(1) / F.elem(11), m0=F.elem(0),
                       eta=1, epsU=ud.eps_f_plus, v=mp.mpc(v))
    spec.validate()
    return spec


def test_nondegenerate_theta_is_nonzero():
    with CTX.workprec():
        tv = theta_rm(nondegenerate_spec(1j), CTX)
        assert abs(tv.value) > mp.mpf("0.5")


@pytest.mark.parametrize("vtxt", SUITE_V)
def test_nondegenerate_functional_equation(vtxt):
    with CTX.workprec():
        spec = nondegenerate_spec(complex(vtxt))
        assert functional_equation_Theta(spec, CTX) < 1e-25


def test_nondegenerate_hecke_averaging():
    with FAST.workprec():
        spec = nondegenerate_spec(1j)
        assert hecke_average_check(spec, FAST) < 1e-10


def test_nondegenerate_squared_unit_doubles():
    with CTX.workprec():
        spec = nondegenerate_spec(1j)
        big = RMThetaSpec(L=spec.L, l0=spec.l0, m0=spec.m0, eta=spec.eta,
                          epsU=spec.epsU * spec.epsU, v=spec.v)
        big.validate()
        v1 = theta_rm(spec, CTX)
        v2 = theta_rm(big, CTX)
        assert abs(v1.value) > mp.mpf("0.5")
        assert abs(v2.value - 2 * v1.value) < 1e-25 + 10 * (
            v1.tail_bound + v2.tail_bound)
