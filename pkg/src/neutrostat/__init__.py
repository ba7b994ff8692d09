"""Statistics on data carrying indeterminacy: set-valued observations and
numbers of the form a + bI with I**2 = I."""

__version__ = "0.1.0"

from .errors import NeutroStatError  # noqa: E402,F401
from .neutro_num import NeutroComplex, NeutroNumber  # noqa: E402,F401
from .setval import Crisp, Finite, Interval, Union, parse_setvalue  # noqa: E402,F401
