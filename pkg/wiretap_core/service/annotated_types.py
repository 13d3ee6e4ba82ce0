# pylint: disable=invalid-name
"""
This module provides custom type annotations used by the models and
the numeric code.
"""

import numpy as np
from numpy.typing import NDArray
from typing_extensions import Annotated


str_016 = Annotated[str, 16]
"""
A string column of at most 16 characters, used for short codes such as
bound names and simulation modes.
"""

str_032 = Annotated[str, 32]
"""
A string column of at most 32 characters, used for command and
objective names.
"""

str_064 = Annotated[str, 64]
"""
A string column of at most 64 characters, used for hashes and
channel names.
"""

str_255 = Annotated[str, 255]
"""
A string column of at most 255 characters, used for free text such as
the recorded invocation.
"""

ProbVector = Annotated[NDArray[np.float64], "simplex"]
"""
A one-dimensional array of nonnegative masses summing to one.
"""

ProbTensor = Annotated[NDArray[np.float64], "joint"]
"""
A dense joint distribution; one axis per random variable.
"""
