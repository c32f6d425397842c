import numpy as np
import pytest

from planerank.config import settings
from planerank.integrators import (
    IntegrationMethod,
    PlainTrapezoidIntegrator,
    SubstitutedIntegrator,
    get_integrator,
    list_methods,
)


class TestIntegrationMethod:
    @pytest.mark.parametrize(
        "text, method",
        [
            ("substituted", IntegrationMethod.SUBSTITUTED),
            ("Plain-Trapezoid", IntegrationMethod.PLAIN_TRAPEZOID),
            ("PLAIN_TRAPEZOID", IntegrationMethod.PLAIN_TRAPEZOID),
        ],
    )
    def test_from_string(self, text, method):
        assert IntegrationMethod.from_string(text) is method

    def test_unknown(self):
        with pytest.raises(ValueError):
            IntegrationMethod.from_string("romberg")


class TestFactory:
    def test_defaults(self):
        integrator = get_integrator()
        assert isinstance(integrator, SubstitutedIntegrator)
        assert integrator.step == settings.step

    def test_by_name(self):
        assert isinstance(get_integrator("plain_trapezoid", 1e-4), PlainTrapezoidIntegrator)

    def test_list_methods(self):
        assert set(list_methods()) == {"plain_trapezoid", "substituted"}

    def test_bad_step(self):
        with pytest.raises(ValueError):
            get_integrator(step=0.0)


class TestGrids:
    def test_plain_grid_spans_half(self):
        g = PlainTrapezoidIntegrator(1e-3).grid()
        assert g.x[0] == 0.0 and g.x[-1] == 0.5
        assert g.x.size == 501
        assert np.all(g.jacobian == 1.0)

    def test_substituted_grid_maps_onto_half(self):
        g = SubstitutedIntegrator(1e-3).grid()
        assert g.z[0] == 0.0
        assert g.z[-1] == pytest.approx(0.5)
        assert np.allclose(g.root, np.sqrt(1.0 - 2.0 * g.z))
        assert np.allclose(g.jacobian, -g.x)

    def test_grid_points(self):
        assert SubstitutedIntegrator(1e-2).grid_points() == 101


class TestCascade:
    def test_kmax_zero(self):
        c = SubstitutedIntegrator(1e-4).integrate(0)
        assert c.shape == (1,)
        assert c[0] == pytest.approx(2 / 3, abs=1e-8)

    def test_plain_converges_slower(self):
        plain = PlainTrapezoidIntegrator(1e-4).integrate(1)
        substituted = SubstitutedIntegrator(1e-4).integrate(1)
        reference = SubstitutedIntegrator(1e-5).integrate(1)
        assert abs(substituted[1] - reference[1]) < abs(plain[1] - reference[1])
