import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergoloss.distances import (
    Measure,
    bures_distance,
    check_axioms,
    distance,
    fidelity,
    hellinger_distance,
    pinsker_gap,
    relative_entropy,
    sqrt_jsd,
    trace_distance,
    von_neumann_entropy,
)
from ergoloss.qstate import BlochAngles, DensityMatrix, pure_from_bloch, random_density_matrix

MIXED = DensityMatrix.maximally_mixed()
GROUND = DensityMatrix.from_populations(0.0)
EXCITED = DensityMatrix.from_populations(1.0)
PLUS = pure_from_bloch(BlochAngles(math.pi / 2.0, 0.0))


def states(seed):
    rng = np.random.default_rng(seed)
    return [random_density_matrix(rng, pure=bool(i % 2)) for i in range(60)]


bloch_vectors = st.tuples(
    st.floats(-1.0, 1.0), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0)
).filter(lambda r: sum(x * x for x in r) <= 1.0)


class TestFrozenValues:
    """Hand-computed reference values."""

    def test_trace_orthogonal_pure(self):
        assert trace_distance(GROUND, EXCITED).value == pytest.approx(1.0, abs=1e-15)

    def test_trace_mixed_vs_pure(self):
        assert trace_distance(MIXED, EXCITED).value == pytest.approx(0.5, abs=1e-15)

    def test_fidelity_mixed_vs_pure(self):
        assert fidelity(MIXED, EXCITED) == pytest.approx(0.5, abs=1e-15)

    def test_bures_mixed_vs_pure(self):
        # sqrt(2 (1 - sqrt(1/2)))
        want = math.sqrt(2.0 * (1.0 - math.sqrt(0.5)))
        assert bures_distance(MIXED, EXCITED).value == pytest.approx(want, abs=1e-12)

    def test_hellinger_mixed_vs_pure(self):
        want = math.sqrt(2.0 * (1.0 - math.sqrt(0.5)))
        assert hellinger_distance(MIXED, EXCITED).value == pytest.approx(want, abs=1e-12)

    def test_relative_entropy_pure_vs_mixed(self):
        assert relative_entropy(EXCITED, MIXED).value == pytest.approx(
            math.log(2.0), abs=1e-12
        )

    def test_pinsker_gap_pure_vs_mixed(self):
        assert pinsker_gap(EXCITED, MIXED) == pytest.approx(
            math.log(2.0) - 0.5, abs=1e-12
        )

    def test_sqrt_jsd_orthogonal_pure_is_max(self):
        assert sqrt_jsd(GROUND, EXCITED).value == pytest.approx(
            math.sqrt(math.log(2.0)), abs=1e-12
        )

    def test_entropy_of_mixed(self):
        assert von_neumann_entropy(MIXED) == pytest.approx(math.log(2.0), abs=1e-14)


class TestDivergence:
    def test_relative_entropy_diverges_on_support_mismatch(self):
        d = relative_entropy(MIXED, EXCITED)
        assert d.divergent and math.isinf(float(d))

    def test_relative_entropy_finite_on_full_rank(self):
        d = relative_entropy(EXCITED, MIXED)
        assert not d.divergent

    def test_pinsker_gap_divergent_is_inf(self):
        assert math.isinf(pinsker_gap(MIXED, EXCITED))


class TestBounds:
    @pytest.mark.parametrize("measure", [m for m in Measure if m.is_bounded])
    def test_upper_bound_respected(self, measure):
        worst = 0.0
        ss = states(17)
        for r in ss[:20]:
            for s in ss[20:40]:
                worst = max(worst, float(distance(measure, r, s)))
        assert worst <= measure.upper_bound + 1e-9

    @pytest.mark.parametrize("measure", [m for m in Measure if m.is_bounded])
    def test_upper_bound_attained_by_orthogonal_pure(self, measure):
        assert float(distance(measure, GROUND, EXCITED)) == pytest.approx(
            measure.upper_bound, abs=1e-9
        )

    def test_measure_trait_flags(self):
        assert not Measure.RELATIVE_ENTROPY.is_symmetric
        assert not Measure.RELATIVE_ENTROPY.satisfies_triangle
        assert not Measure.RELATIVE_ENTROPY.is_bounded
        for m in (Measure.TRACE, Measure.BURES, Measure.HELLINGER, Measure.SQRT_JSD):
            assert m.is_symmetric and m.satisfies_triangle and m.is_bounded


class TestMetricProperties:
    @settings(max_examples=60, deadline=None)
    @given(bloch_vectors, bloch_vectors, bloch_vectors)
    def test_triangle_and_symmetry(self, r1, r2, r3):
        rhos = [DensityMatrix.from_bloch(np.array(r)) for r in (r1, r2, r3)]
        for m in (Measure.TRACE, Measure.BURES, Measure.HELLINGER, Measure.SQRT_JSD):
            d12 = float(distance(m, rhos[0], rhos[1]))
            d21 = float(distance(m, rhos[1], rhos[0]))
            d13 = float(distance(m, rhos[0], rhos[2]))
            d32 = float(distance(m, rhos[2], rhos[1]))
            assert d12 == pytest.approx(d21, abs=1e-10)
            assert d12 <= d13 + d32 + 1e-9

    @settings(max_examples=60, deadline=None)
    @given(bloch_vectors)
    def test_identity(self, r):
        rho = DensityMatrix.from_bloch(np.array(r))
        for m in Measure:
            assert float(distance(m, rho, rho)) <= 1e-7

    @settings(max_examples=60, deadline=None)
    @given(bloch_vectors, bloch_vectors)
    def test_pinsker(self, r1, r2):
        rho = DensityMatrix.from_bloch(np.array(r1))
        sig = DensityMatrix.from_bloch(np.array(r2))
        assert pinsker_gap(rho, sig) >= -1e-10

    @settings(max_examples=60, deadline=None)
    @given(bloch_vectors, bloch_vectors)
    def test_fidelity_trace_consistency(self, r1, r2):
        rho = DensityMatrix.from_bloch(np.array(r1))
        sig = DensityMatrix.from_bloch(np.array(r2))
        f = fidelity(rho, sig)
        dt = trace_distance(rho, sig).value
        # Fuchs-van-de-Graaf: 1 - sqrt(F) <= D_T <= sqrt(1 - F)
        assert 1.0 - math.sqrt(f) <= dt + 1e-9
        assert dt <= math.sqrt(max(1.0 - f, 0.0)) + 1e-9


class TestAxiomReport:
    def test_metric_measures_pass(self):
        for m in (Measure.TRACE, Measure.SQRT_JSD):
            rep = check_axioms(m, 300, seed=2)
            assert rep.all_passed(), rep.to_json()

    def test_relative_entropy_fails_symmetry_and_triangle(self):
        rep = check_axioms(Measure.RELATIVE_ENTROPY, 300, seed=2)
        assert rep.checks["p1"].passed
        assert rep.checks["p2"].passed
        assert rep.checks["p3"].passed
        assert not rep.checks["p4"].passed
        assert not rep.checks["p5"].passed
        assert rep.checks["p4"].witness_states is not None
        assert rep.checks["p5"].witness_states is not None

    def test_json_shape(self):
        import json

        rep = check_axioms(Measure.TRACE, 50, seed=0)
        payload = json.loads(rep.to_json())
        assert payload["measure"] == "trace"
        for key in ("p1", "p2", "p3", "p4", "p5"):
            assert set(payload[key]) == {"pass", "worst_violation", "witness_states"}

    def test_rejects_bad_sample_count(self):
        with pytest.raises(ValueError):
            check_axioms(Measure.TRACE, 0)
