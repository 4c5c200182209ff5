"""Forward optical model: contact state -> per-receiver RGB intensities.

Light injected by each colored emitter reaches a receiver attenuated by a
Gaussian beam profile of the straight-line path length r:

    I(r) = I0 * exp(-2 r^2 / w^2)

A contact modulates each emitter->receiver pair with two factors:

  * absorption along the path, exp(-alpha * d * g_seg), where g_seg is a
    Gaussian kernel of the distance from the contact point to the
    emitter-receiver segment (compressed silicone absorbs light crossing
    the contact zone);
  * reflection gain toward nearby receivers, 1 + beta * d * g_rec, with
    g_rec a Gaussian kernel of the contact-to-receiver distance (deformed
    surface redirects light into close-by fibers).

Depth d enters only through these factors; distances are planar. Channels
are the per-color sums of pair contributions, clamped to [0, 1].
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import ContactState, SensorGeometry

N_FEATURES = 27


@dataclass(frozen=True)
class OpticsParams:
    """Tunables of the intensity model; defaults give a well-spread sweep."""

    source_intensity: float = 1.0
    beam_spot_mm: float = 20.0
    absorption_gain_per_mm: float = 0.5
    reflection_gain_per_mm: float = 0.3
    contact_influence_radius_mm: float = 4.0
    noise_sigma: float = 0.01
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.source_intensity <= 0:
            raise ValueError("source intensity must be positive")
        if self.beam_spot_mm <= 0:
            raise ValueError("beam spot size must be positive")
        if self.contact_influence_radius_mm <= 0:
            raise ValueError("contact influence radius must be positive")
        if self.absorption_gain_per_mm < 0 or self.reflection_gain_per_mm < 0:
            raise ValueError("modulation gains must be non-negative")
        if self.noise_sigma < 0:
            raise ValueError("noise sigma must be non-negative")


class ReceiverResponse:
    """RGB intensity triples for the nine receivers, all values in [0, 1].

    Flat ordering is receiver-major then channel: index 3*j + c.
    """

    __slots__ = ("values",)

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=float)
        if values.shape != (9, 3):
            raise ValueError("response must have shape (9, 3)")
        if not np.all(np.isfinite(values)):
            raise ValueError("response values must be finite")
        if values.min() < 0.0 or values.max() > 1.0:
            raise ValueError("response values must lie in [0, 1]")
        self.values = values

    def flat(self) -> np.ndarray:
        """27-vector view, receiver-major then R,G,B."""
        return self.values.reshape(-1).copy()

    @classmethod
    def from_flat(cls, flat: np.ndarray) -> "ReceiverResponse":
        flat = np.asarray(flat, dtype=float)
        if flat.shape != (N_FEATURES,):
            raise ValueError(f"expected {N_FEATURES} values")
        return cls(flat.reshape(9, 3))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReceiverResponse):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"ReceiverResponse({self.values!r})"


def gaussian_intensity(r_mm: float, params: OpticsParams) -> float:
    """Beam intensity after a straight path of length r_mm."""
    if r_mm < 0:
        raise ValueError("path length must be non-negative")
    w = params.beam_spot_mm
    return params.source_intensity * float(np.exp(-2.0 * r_mm * r_mm / (w * w)))


def _pair_distances(geometry: SensorGeometry) -> np.ndarray:
    """(n_emitters, n_receivers) straight-line distances between ports."""
    em = np.asarray(geometry.emitter_positions_mm, dtype=float)
    rec = np.asarray(geometry.receiver_positions_mm, dtype=float)
    return np.linalg.norm(em[:, None, :] - rec[None, :, :], axis=2)


def _pair_intensities(geometry: SensorGeometry, params: OpticsParams) -> np.ndarray:
    d = _pair_distances(geometry)
    w = params.beam_spot_mm
    return params.source_intensity * np.exp(-2.0 * d * d / (w * w))


def _accumulate_channels(
    geometry: SensorGeometry, pair_intensity: np.ndarray
) -> np.ndarray:
    """Sum (emitter, receiver) contributions into (receiver, channel)."""
    out = np.zeros((9, 3))
    for e in range(pair_intensity.shape[0]):
        out[:, geometry.emitter_channel(e)] += pair_intensity[e]
    return np.clip(out, 0.0, 1.0)


def baseline_response(
    geometry: SensorGeometry, params: OpticsParams
) -> ReceiverResponse:
    """Receiver intensities with no contact; deterministic, noise-free."""
    return ReceiverResponse(_accumulate_channels(geometry, _pair_intensities(geometry, params)))


def point_segment_distance(
    p: np.ndarray, a: np.ndarray, b: np.ndarray
) -> np.ndarray:
    """Euclidean distance from point(s) p to the segment a->b."""
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(p - a, axis=-1)
    t = np.clip(((p - a) @ ab) / denom, 0.0, 1.0)
    closest = a + np.multiply.outer(t, ab)
    return np.linalg.norm(p - closest, axis=-1)


def response_at(
    geometry: SensorGeometry,
    params: OpticsParams,
    x_mm: float,
    y_mm: float,
    depth_mm: float,
) -> ReceiverResponse:
    """Noise-free response for a contact at (x, y) pressed to depth_mm."""
    if depth_mm < 0:
        raise ValueError("depth must be non-negative")
    if not geometry.contains(x_mm, y_mm):
        raise ValueError(f"contact ({x_mm}, {y_mm}) lies outside the slab")
    base = _pair_intensities(geometry, params)
    if depth_mm == 0.0:
        return ReceiverResponse(_accumulate_channels(geometry, base))

    contact = np.array([x_mm, y_mm], dtype=float)
    em = np.asarray(geometry.emitter_positions_mm, dtype=float)
    rec = np.asarray(geometry.receiver_positions_mm, dtype=float)
    two_sigma_sq = 2.0 * params.contact_influence_radius_mm ** 2

    seg_dist = np.empty((em.shape[0], rec.shape[0]))
    for e in range(em.shape[0]):
        for j in range(rec.shape[0]):
            seg_dist[e, j] = point_segment_distance(contact, em[e], rec[j])
    g_seg = np.exp(-(seg_dist ** 2) / two_sigma_sq)

    rec_dist = np.linalg.norm(rec - contact[None, :], axis=1)
    g_rec = np.exp(-(rec_dist ** 2) / two_sigma_sq)

    absorption = np.exp(-params.absorption_gain_per_mm * depth_mm * g_seg)
    gain = 1.0 + params.reflection_gain_per_mm * depth_mm * g_rec[None, :]
    return ReceiverResponse(_accumulate_channels(geometry, base * absorption * gain))


def deformed_response(
    geometry: SensorGeometry, params: OpticsParams, contact: ContactState
) -> ReceiverResponse:
    """Noise-free response for a grid contact state."""
    return response_at(geometry, params, contact.x_mm, contact.y_mm, contact.depth_mm)


def add_noise(
    response: ReceiverResponse, sigma: float, seed: int
) -> ReceiverResponse:
    """Add iid zero-mean Gaussian noise per channel and clamp to [0, 1].

    A fresh generator is built from the seed, so identical (seed, input)
    pairs give identical output.
    """
    if sigma < 0:
        raise ValueError("noise sigma must be non-negative")
    if sigma == 0.0:
        return ReceiverResponse(response.values.copy())
    rng = np.random.default_rng(seed)
    noisy = response.values + rng.normal(0.0, sigma, size=(9, 3))
    return ReceiverResponse(np.clip(noisy, 0.0, 1.0))


def _default_disc_centers(width: int, height: int, pitch: int) -> tuple[tuple[int, int], ...]:
    cx, cy = width // 2, height // 2
    return tuple(
        (cx + (i % 3 - 1) * pitch, cy + (i // 3 - 1) * pitch) for i in range(9)
    )


@dataclass(frozen=True)
class FrameSpec:
    """Camera frame layout: each receiver images as a filled disc."""

    width_px: int = 640
    height_px: int = 480
    disc_radius_px: int = 18
    disc_centers_px: tuple[tuple[int, int], ...] = field(
        default_factory=lambda: _default_disc_centers(640, 480, 120)
    )

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("frame dimensions must be positive")
        if self.disc_radius_px <= 0:
            raise ValueError("disc radius must be positive")
        if len(self.disc_centers_px) != 9:
            raise ValueError("expected nine disc centers")
        r = self.disc_radius_px
        for cx, cy in self.disc_centers_px:
            if not (r <= cx < self.width_px - r and r <= cy < self.height_px - r):
                raise ValueError(f"disc at ({cx}, {cy}) does not fit in the frame")
        centers = np.asarray(self.disc_centers_px, dtype=float)
        for i in range(9):
            for j in range(i + 1, 9):
                if np.linalg.norm(centers[i] - centers[j]) <= 2 * r:
                    raise ValueError(f"discs {i} and {j} overlap")


@dataclass(frozen=True)
class Frame:
    """Rendered camera image: discs on a black background."""

    spec: FrameSpec
    pixels: np.ndarray  # (height, width, 3) uint8

    def __post_init__(self) -> None:
        expected = (self.spec.height_px, self.spec.width_px, 3)
        if self.pixels.shape != expected or self.pixels.dtype != np.uint8:
            raise ValueError(f"pixels must be uint8 with shape {expected}")


def render_frame(
    response: ReceiverResponse, spec: FrameSpec | None = None
) -> Frame:
    """Draw each receiver as a uniform disc colored by its RGB intensities."""
    if spec is None:
        spec = FrameSpec()
    pixels = np.zeros((spec.height_px, spec.width_px, 3), dtype=np.uint8)
    colors = np.rint(response.values * 255.0).astype(np.uint8)
    r = spec.disc_radius_px
    for i, (cx, cy) in enumerate(spec.disc_centers_px):
        ys, xs = np.ogrid[-r : r + 1, -r : r + 1]
        mask = xs * xs + ys * ys <= r * r
        patch = pixels[cy - r : cy + r + 1, cx - r : cx + r + 1]
        patch[mask] = colors[i]
    return Frame(spec=spec, pixels=pixels)


def write_ppm(frame: Frame, path: str | Path) -> None:
    """Write the frame as a binary PPM (P6, maxval 255)."""
    header = f"P6\n{frame.spec.width_px} {frame.spec.height_px}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(frame.pixels.tobytes())


def read_ppm(path: str | Path) -> np.ndarray:
    """Read a binary PPM (P6) image into a (height, width, 3) uint8 array."""
    data = Path(path).read_bytes()
    if not data.startswith(b"P6"):
        raise ValueError(f"{path}: not a binary PPM (P6) file")
    # Header: magic, width, height, maxval; comments (#...) allowed.
    pos = 2
    fields = []
    while len(fields) < 3:
        match = re.compile(rb"\s*(?:#[^\n]*\n)*\s*(\d+)").match(data, pos)
        if match is None:
            raise ValueError(f"{path}: malformed PPM header")
        fields.append(int(match.group(1)))
        pos = match.end()
    if fields[2] != 255:
        raise ValueError(f"{path}: only maxval 255 is supported")
    pos += 1  # single whitespace after maxval
    width, height = fields[0], fields[1]
    body = data[pos : pos + width * height * 3]
    if len(body) != width * height * 3:
        raise ValueError(f"{path}: truncated pixel data")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3).copy()


def save_responses_csv(responses: list[ReceiverResponse], path: str | Path) -> None:
    """Write responses as rows of 27 comma-separated values (f00..f26 header)."""
    header = ",".join(f"f{i:02d}" for i in range(N_FEATURES))
    lines = [header]
    for resp in responses:
        lines.append(",".join(f"{v:.17g}" for v in resp.flat()))
    Path(path).write_text("\n".join(lines) + "\n")


def load_responses_csv(path: str | Path) -> list[ReceiverResponse]:
    """Read rows of 27 values written by save_responses_csv."""
    lines = Path(path).read_text().strip().splitlines()
    header = ",".join(f"f{i:02d}" for i in range(N_FEATURES))
    if not lines or lines[0] != header:
        raise ValueError(f"{path}: expected header {header!r}")
    responses = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != N_FEATURES:
            raise ValueError(f"{path}:{lineno}: expected {N_FEATURES} values")
        responses.append(ReceiverResponse.from_flat(np.array([float(p) for p in parts])))
    return responses
