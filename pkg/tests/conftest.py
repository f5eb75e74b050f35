import math

import pytest

from qstab import (BlochPoint, ControlClass, SystemParams, synth_circle_continuous,
                   synth_circle_time_energy, synth_circle_within_budget,
                   synth_point_hold, transition_time_bound)


def build_regression_corpus():
    """(result, p0, params) triples covering every 2-dim synthesis family."""
    params1 = SystemParams(1.0, 0.1)
    params2 = SystemParams(1.0, 1.0)
    params3 = SystemParams(1.0, 0.5)
    ts = transition_time_bound(params2, ControlClass.BOUNDED_CONTINUOUS)
    corpus = [
        (synth_point_hold(BlochPoint(math.pi / 2, 0.0), BlochPoint(0.0, 0.0), params1),
         BlochPoint(math.pi / 2, 0.0), params1),
        (synth_point_hold(BlochPoint(1.2, 2.5), BlochPoint(0.7, 4.0), params2),
         BlochPoint(1.2, 2.5), params2),
        (synth_circle_continuous(BlochPoint(1.0, 2.0), BlochPoint(2.2, 5.5), params3),
         BlochPoint(1.0, 2.0), params3),
        (synth_circle_continuous(BlochPoint(0.0, 0.0), BlochPoint(math.pi, 0.0),
                                 params3, n=10), BlochPoint(0.0, 0.0), params3),
        (synth_circle_time_energy(BlochPoint(0.4, 5.1), BlochPoint(2.7, 0.9), params2,
                                  7 * math.pi, math.pi), BlochPoint(0.4, 5.1), params2),
    ]
    for p0, pf in [(BlochPoint(2.5, 0.3), BlochPoint(1.0, 4.0)),
                   (BlochPoint(0.8, 0.3), BlochPoint(2.0, 1.5)),
                   (BlochPoint(2.5, 2.0), BlochPoint(0.9, 5.0)),
                   (BlochPoint(0.5, math.pi), BlochPoint(math.pi / 2, 0.0))]:
        corpus.append((synth_circle_within_budget(p0, pf, params2, ts), p0, params2))
    return corpus


@pytest.fixture(scope="session")
def regression_corpus():
    return build_regression_corpus()
