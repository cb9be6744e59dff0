"""Affine functional f(x) = w.x + b on R^d, whose level sets define the Reeb quotient."""

import os
from typing import Sequence, Union

import numpy as np

import reebsweep.utils.io as io_utils
from reebsweep.common.errors import DimensionMismatchError, InputError

_PathLike = Union[str, "os.PathLike[str]"]


class AffineFunctional:
    """Implements the affine function f(x) = w.x + b."""

    def __init__(self, gradient: Union[np.ndarray, Sequence[float]], offset: float = 0.0, allow_constant: bool = False) -> None:
        """Initialize from gradient w and offset b.

        Args:
            gradient: array of shape (d,) representing the weight vector w.
            offset: scalar offset b.
            allow_constant: whether the degenerate functional w = 0 is accepted.

        Raises:
            InputError: if w is not a non-empty finite vector, b is not finite, or w = 0 without `allow_constant`.
        """
        w = np.asarray(gradient, dtype=float)
        if w.ndim != 1 or w.shape[0] < 1:
            raise InputError("Input array `gradient` must have shape (d,) with d >= 1.")

        if not np.all(np.isfinite(w)):
            raise InputError("Input array `gradient` must be finite.")

        if not np.isfinite(offset):
            raise InputError("Input `offset` must be finite.")

        if not np.any(w != 0.0) and not allow_constant:
            raise InputError("Constant functional (gradient = 0) requires `allow_constant`.")

        self.w_ = w
        self.b_ = float(offset)
        self.allow_constant = allow_constant

    @classmethod
    def axis_projection(cls, dim: int, axis: int = -1, offset: float = 0.0) -> "AffineFunctional":
        """Projection onto one coordinate axis of R^dim (by default the last one)."""
        w = np.zeros(dim)
        w[axis] = 1.0
        return cls(w, offset)

    @property
    def gradient(self) -> np.ndarray:
        """Return the (d,) weight vector."""
        return self.w_

    @property
    def offset(self) -> float:
        """Return the offset."""
        return self.b_

    @property
    def dim(self) -> int:
        """Return the ambient dimension d."""
        return self.w_.shape[0]

    @property
    def is_constant(self) -> bool:
        """Whether w = 0."""
        return not np.any(self.w_ != 0.0)

    @property
    def lipschitz_constant(self) -> float:
        """The exact Lipschitz constant of f, i.e. the norm of w."""
        return float(np.linalg.norm(self.w_))

    def check_dimension(self, dim: int) -> None:
        """Raise if points of dimension `dim` cannot be evaluated."""
        if dim != self.dim:
            raise DimensionMismatchError(f"Functional has dimension {self.dim}, but points have dimension {dim}.")

    def __call__(self, x: np.ndarray) -> Union[float, np.ndarray]:
        """Evaluate f on a (d,) point or on an (N,d) array of points."""
        x = np.asarray(x, dtype=float)
        self.check_dimension(x.shape[-1])
        values = x @ self.w_ + self.b_
        return float(values) if x.ndim == 1 else values

    def __repr__(self) -> str:
        """Return a human-readable string representation of the class."""
        return f"AffineFunctional(w={np.round(self.w_, 3).tolist()}, b={self.b_:.3f})"

    def __eq__(self, other: object) -> bool:
        """Check for equality with another functional."""
        if not isinstance(other, AffineFunctional):
            return False
        return np.array_equal(self.w_, other.w_) and self.b_ == other.b_

    def save_as_json(self, save_fpath: _PathLike) -> None:
        """Save the functional to a JSON representation on disk."""
        dict_for_serialization = {
            "gradient": self.w_.tolist(),
            "offset": self.b_,
            "allow_constant": self.allow_constant,
        }
        io_utils.save_json_file(save_fpath, dict_for_serialization)

    @classmethod
    def from_json(cls, json_fpath: _PathLike) -> "AffineFunctional":
        """Generate class inst. from a JSON file with `gradient`, `offset` and optionally `allow_constant`."""
        json_data = io_utils.read_json_file(json_fpath)
        return cls(
            gradient=json_data["gradient"],
            offset=float(json_data.get("offset", 0.0)),
            allow_constant=bool(json_data.get("allow_constant", False)),
        )
