"""
Parameters of the rating transformation.
"""

import dataclasses
import math

from eventimpact.errors import InvalidTransformConfig


@dataclasses.dataclass(frozen=True)
class TransformConfig:
    """
    Parameters used when transforming a :py:class:`.Rating` into a CCM.

    Each rating-based CCF may carry its own configuration, e.g., a scenario
    can amplify the differences between years of experience while keeping
    the phase durations as they are.
    """

    z: float = 1.0
    """
    Exponent applied to the utility ratios, ``m_ij = (u_i / u_j) ** z``.

    ``z = 1`` is the trivial choice. Higher values amplify large differences
    between utilities, smaller values dampen them. When :py:attr:`normalize`
    is enabled, the range normalization cancels the effect of ``z`` on the
    final matrix; ``z`` then only matters for raw (unnormalized) matrices.
    """

    normalize: bool = True
    """
    Whether to map the ratio matrix into ``[1/9, 9]`` (largest entry to 9).
    """

    def __post_init__(self):
        z = float(self.z)
        if not (math.isfinite(z) and z > 0):
            raise InvalidTransformConfig(f'The exponent z must be a finite '
                                         f'positive number, found {self.z}',
                                         value=self.z)
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'normalize', bool(self.normalize))
