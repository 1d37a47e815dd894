"""Grayscale images, Gaussian corruption and a smoothed edge-penalty denoiser.

Pixels are row-major intensities in ``[0, 1]``.
"""

from dataclasses import dataclass

import numpy as np

from ..core import DimensionError, Objective


@dataclass(frozen=True)
class ImageGray:
    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        px = np.asarray(self.pixels, dtype=np.float64).reshape(-1)
        if px.size != self.width * self.height:
            raise DimensionError(
                f"{px.size} pixels for a {self.width}x{self.height} image"
            )
        if not np.all(np.isfinite(px)):
            raise ValueError("pixels must be finite")
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.float64)
        h, w = arr.shape
        return cls(w, h, arr.reshape(-1))

    def as_array(self):
        return self.pixels.reshape(self.height, self.width)

    def __eq__(self, other):
        if not isinstance(other, ImageGray):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None


def add_gaussian_noise(img, sigma_frac, seed):
    """Add i.i.d. ``N(0, sigma_frac^2)`` noise and clamp to ``[0, 1]``.

    Normal variates come from numpy's PCG64 generator (ziggurat sampler)
    seeded with ``seed``, so equal seeds give equal images.
    """
    if not 0.0 <= sigma_frac < 1.0:
        raise ValueError("sigma_frac must lie in [0, 1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal(img.pixels.size)
    out = np.clip(img.pixels + sigma_frac * z, 0.0, 1.0)
    return ImageGray(img.width, img.height, out)


def rmse(truth, restored):
    """Relative error ``||truth - restored|| / ||truth||``."""
    if (truth.width, truth.height) != (restored.width, restored.height):
        raise DimensionError("images differ in size")
    denom = np.linalg.norm(truth.pixels)
    if denom == 0.0:
        raise ValueError("relative error is undefined for an all-zero reference")
    return float(np.linalg.norm(truth.pixels - restored.pixels) / denom)


@dataclass(frozen=True)
class DenoiseSpec:
    noisy: ImageGray
    lam: float = 0.08
    eps_smooth: float = 1e-3

    def __post_init__(self):
        if not self.lam >= 0.0:
            raise ValueError("lambda must be >= 0")
        if not self.eps_smooth > 0.0:
            raise ValueError("eps_smooth must be > 0")


def denoise_objective(spec):
    """``0.5 ||x - b||^2 + lam * sum phi(x_i - x_j)`` over 4-neighbour pairs,
    with ``phi(u) = sqrt(u^2 + eps^2) - eps``."""
    b = spec.noisy.as_array()
    h, w = b.shape
    lam, eps = spec.lam, spec.eps_smooth

    def fun_grad(x):
        u = x.reshape(h, w)
        r = u - b
        dx = u[:, 1:] - u[:, :-1]
        dy = u[1:, :] - u[:-1, :]
        sx = np.sqrt(dx * dx + eps * eps)
        sy = np.sqrt(dy * dy + eps * eps)
        f = 0.5 * np.sum(r * r) + lam * (np.sum(sx - eps) + np.sum(sy - eps))
        g = r.copy()
        px = lam * dx / sx
        py = lam * dy / sy
        g[:, 1:] += px
        g[:, :-1] -= px
        g[1:, :] += py
        g[:-1, :] -= py
        return float(f), g.reshape(-1)

    def fun(x):
        return fun_grad(x)[0]

    def grad(x):
        return fun_grad(x)[1]

    return Objective(f"DENOISE{w}x{h}", h * w, fun, grad, fun_grad)


def synthetic_image(size=64):
    """Piecewise-constant test card: a dark background, a bright square, a
    mid-gray disk and a thin horizontal bar."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64) / size
    img = np.full((size, size), 0.2)
    img[(xx > 0.15) & (xx < 0.5) & (yy > 0.15) & (yy < 0.5)] = 0.85
    img[(xx - 0.68) ** 2 + (yy - 0.65) ** 2 < 0.2**2] = 0.55
    img[(yy > 0.82) & (yy < 0.9) & (xx > 0.1) & (xx < 0.9)] = 0.95
    # snap to 8-bit levels so PGM round trips are exact
    img = np.round(img * 255.0) / 255.0
    return ImageGray.from_array(img)
