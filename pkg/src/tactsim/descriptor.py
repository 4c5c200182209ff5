"""27-dimensional color descriptor: per-ROI channel means of non-black pixels.

Each of the nine regions of interest surrounds one receiver disc in the
camera frame. Within an ROI, pixels whose maximum channel is at or below
the black threshold are discarded; the remaining pixels' R, G, B values
are divided by 255 and averaged, giving one triple per ROI. Triples are
concatenated receiver-major into the feature vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .optics import Frame, FrameSpec, ReceiverResponse, N_FEATURES


class EmptyRoiError(ValueError):
    """Raised when an ROI contains no non-black pixel."""

    def __init__(self, roi_index: int):
        super().__init__(f"ROI {roi_index} contains only black pixels")
        self.roi_index = roi_index


@dataclass(frozen=True)
class RoiSpec:
    """Nine pixel rectangles around the receiver discs, plus black threshold."""

    centers_px: tuple[tuple[int, int], ...] = field(
        default_factory=lambda: FrameSpec().disc_centers_px
    )
    width_px: int = 40
    height_px: int = 40
    black_threshold: int = 10

    def __post_init__(self) -> None:
        if len(self.centers_px) != 9:
            raise ValueError("expected nine ROI centers")
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("ROI dimensions must be positive")
        if not 0 <= self.black_threshold <= 255:
            raise ValueError("black threshold must lie in [0, 255]")
        rects = [self.rect(i) for i in range(9)]
        for i in range(9):
            for j in range(i + 1, 9):
                if _rects_overlap(rects[i], rects[j]):
                    raise ValueError(f"ROIs {i} and {j} overlap")

    @classmethod
    def for_frame(cls, spec: FrameSpec, margin_px: int = 2, black_threshold: int = 10) -> "RoiSpec":
        """ROIs sized to cover the frame's discs with a small margin."""
        side = 2 * (spec.disc_radius_px + margin_px)
        return cls(
            centers_px=spec.disc_centers_px,
            width_px=side,
            height_px=side,
            black_threshold=black_threshold,
        )

    def rect(self, index: int) -> tuple[int, int, int, int]:
        """(x0, y0, x1, y1) pixel bounds of an ROI, end-exclusive."""
        cx, cy = self.centers_px[index]
        x0 = cx - self.width_px // 2
        y0 = cy - self.height_px // 2
        return (x0, y0, x0 + self.width_px, y0 + self.height_px)


def _rects_overlap(a: tuple[int, int, int, int], b: tuple[int, int, int, int]) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def extract_roi_means(frame: Frame, spec: RoiSpec | None = None) -> np.ndarray:
    """Feature vector from a frame: 27 per-ROI channel means in [0, 1].

    A pixel is black iff max(R, G, B) <= black_threshold; black pixels are
    excluded from the mean. Raises EmptyRoiError if an ROI has no other
    pixels, ValueError if an ROI falls outside the frame.
    """
    if spec is None:
        spec = RoiSpec.for_frame(frame.spec)
    h, w = frame.pixels.shape[:2]
    features = np.empty(N_FEATURES)
    for i in range(9):
        x0, y0, x1, y1 = spec.rect(i)
        if x0 < 0 or y0 < 0 or x1 > w or y1 > h:
            raise ValueError(f"ROI {i} exceeds the frame bounds")
        patch = frame.pixels[y0:y1, x0:x1].astype(float)
        keep = patch.max(axis=2) > spec.black_threshold
        if not keep.any():
            raise EmptyRoiError(i)
        features[3 * i : 3 * i + 3] = patch[keep].mean(axis=0) / 255.0
    return features


def features_from_response(response: ReceiverResponse) -> np.ndarray:
    """Feature vector straight from a response, skipping the render step.

    Matches extract_roi_means applied to a rendered frame of the same
    response, up to 8-bit quantization of the pixel values.
    """
    return response.flat()
