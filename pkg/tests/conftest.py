from fractions import Fraction as F

import pytest

from qfrac.arith import ParamPoint


@pytest.fixture
def ref_point():
    return ParamPoint(F(1, 2), F(1, 3), F(1, 5))
