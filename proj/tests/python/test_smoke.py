import json
import math

import pytest

import cubicsplit as cs


@pytest.fixture(scope="module")
def golden():
    return cs.Analysis("cubic-golden")


def test_presets():
    assert set(cs.preset_names()) == {"cubic-golden", "cubic-golden-delta0"}


def test_koch(golden):
    k = json.loads(golden.koch_json())
    assert k["T"] == [[1, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert abs(golden.lam - 1.465571) < 1e-6
    assert abs(golden.delta - 0.289453) < 1e-6


def test_envelope(golden):
    assert abs(golden.xi0 - 0.492049) < 1e-6
    assert golden.strong_sep
    assert golden.B0_minus > golden.J1_plus
    assert golden.xi0 == pytest.approx(2 * cs.lg(2 * golden.lam / (math.sqrt(golden.lam) + 1), golden.lam))


def test_intersect():
    lam = 1.465571231876768
    z = cs.intersect(0.0, 1.0, 1.0, 1.0, lam)
    assert z is not None and 0 < z < 1
    assert abs(cs.cc(z, 0.0, 1.0, lam) - cs.cc(z, 1.0, 1.0, lam)) < 1e-12
    with pytest.raises(cs.CubicsplitError) as info:
        cs.intersect(0.0, 1.0, 0.0, 1.0, lam)
    assert info.value.code == "CoincidentDescriptors"


def test_interpolation(golden):
    for zeta in (12.1, 15.37, 20.9):
        e = golden.evaluate(zeta)
        assert e["F1"] == pytest.approx(e["F1_bar"], abs=1e-12)
        phi = json.loads(golden.koch_json())["phi"]
        y = (float(phi) * zeta) % 1.0
        assert golden.upsilon(zeta % 1.0, y) == pytest.approx(e["F1_bar"], abs=1e-9)


def test_j1_star(golden):
    j = golden.j1_star(256)
    assert j.value == pytest.approx(1.010619, abs=5e-6)
    assert sorted(j.confluence) == [-1, 1, 2]


def test_estimate(golden):
    e = golden.estimate(1e-6, 1e-20)
    c0 = float(json.loads(golden.constants_json())["splitting"]["C0"])
    expected = math.log(1e-20) - math.log(1e-6) / 3 - c0 * e.h1 / 1e-6 ** (1 / 6)
    assert e.log_estimate == pytest.approx(expected, rel=1e-12)
    assert e.r_condition_met
    with pytest.raises(cs.CubicsplitError):
        golden.estimate(-1.0, 1e-20)


def test_bad_inputs():
    with pytest.raises(cs.CubicsplitError) as info:
        cs.Analysis("no-such-preset")
    assert info.value.code == "UnknownPreset"
    with pytest.raises(cs.CubicsplitError):
        cs.Analysis(config_json='{"r0": "1"}')
