import math

import mpmath as mp
import numpy as np
import pytest

from vnag import bessel_j1, bessel_y1
from vnag.bessel import _SWITCH

mp.mp.dps = 30


def test_j1_at_zero():
    assert bessel_j1(0.0) == 0.0


def test_j1_reference_value():
    # power-series oracle: sum (-1)^m / (m! (m+1)!) (x/2)^(2m+1) at x = 1
    assert abs(bessel_j1(1.0) - 0.4400505857449335) <= 1e-10


def test_domain_errors():
    with pytest.raises(ValueError):
        bessel_j1(-0.5)
    with pytest.raises(ValueError):
        bessel_y1(0.0)
    with pytest.raises(ValueError):
        bessel_y1(-1.0)


def test_against_high_precision_oracle():
    # coarse version of the acceptance sweep
    for x in np.logspace(-3, 3, 120):
        x = float(x)
        oj = float(mp.besselj(1, x))
        oy = float(mp.bessely(1, x))
        assert abs(bessel_j1(x) - oj) <= 1e-10 * abs(oj)
        assert abs(bessel_y1(x) - oy) <= 1e-10 * abs(oy)


def test_regime_overlap():
    # series and asymptotic implementations agree around the crossover
    from vnag.bessel import _asymptotic, _series_j1, _series_y1
    from decimal import Decimal, localcontext
    with localcontext() as ctx:
        ctx.prec = 45
        for x in (18.0, 19.0, 20.0, 21.0, 22.0):
            ja, ya = _asymptotic(x)
            js = float(_series_j1(Decimal(x)))
            ys = float(_series_y1(Decimal(x)))
            assert abs(ja - js) <= 1e-12
            assert abs(ya - ys) <= 1e-12
    assert _SWITCH == 20.0


def test_no_global_decimal_context_mutation():
    from decimal import getcontext
    before = getcontext().prec
    bessel_j1(5.0)
    bessel_y1(5.0)
    assert getcontext().prec == before


def test_leading_asymptotic_envelope():
    # leading-order forms hold up to an O(1/x) correction
    for x in (50.0, 80.0, 200.0, 1000.0):
        amp = math.sqrt(2.0 / (math.pi * x))
        lead_j = amp * math.cos(x - 0.75 * math.pi)
        lead_y = amp * math.sin(x - 0.75 * math.pi)
        assert abs(bessel_j1(x) - lead_j) <= 0.5 * amp / x
        assert abs(bessel_y1(x) - lead_y) <= 0.5 * amp / x
    # absolute form of the same check at x = 50
    assert abs(bessel_y1(50.0)
               - math.sqrt(2 / (math.pi * 50)) * math.sin(50 - 0.75 * math.pi)) <= 2e-2
