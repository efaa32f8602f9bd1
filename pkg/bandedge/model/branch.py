"""Complex square-root branch convention used by every transform."""

import numpy as np
import numpy.typing as npt

ComplexLike = complex | npt.NDArray[np.complex128]


def principal_sqrt(z: complex | float | npt.ArrayLike) -> ComplexLike:
    """Square root with argument in (-pi/2, pi/2] and the cut on the negative real axis.

    A negative zero imaginary part is folded to +0 so that points on the cut map to
    the upper edge, i.e. sqrt(-x) = +i sqrt(x).
    """
    arr = np.asarray(z, dtype=np.complex128) + 0.0j
    root = np.sqrt(arr)
    if root.ndim == 0:
        return complex(root)
    return root
