from functools import lru_cache

import pytest

from skewunitary import RingSpec, make_ring

F3_T2 = RingSpec(3, 1)
Z9_TRIVIAL = RingSpec(3, 2, star_mode="trivial")
F9_TWISTED = RingSpec(3, 1, d=2, sigma_order=2)
Z9_T2_MINUS_3 = RingSpec(3, 2, b_exponent=1)
Z9_TRUNCATED = RingSpec(3, 2, b_exponent=1, truncate_odd=True)
Z9_T2 = RingSpec(3, 2)
GR_TWISTED = RingSpec(3, 2, d=2, sigma_order=2, b_exponent=1)

SUITE = [F3_T2, Z9_TRIVIAL, Z9_T2_MINUS_3, Z9_TRUNCATED, F9_TWISTED, Z9_T2]


@lru_cache(maxsize=None)
def ring_for(spec: RingSpec):
    return make_ring(spec)


@pytest.fixture(params=SUITE, ids=lambda s: s.label())
def suite_ring(request):
    return ring_for(request.param)
