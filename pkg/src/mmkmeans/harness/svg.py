"""Static SVG scatter plots: cluster-colored points, rings on incomplete samples."""

from __future__ import annotations

import numpy as np

# green, blue, orange first; cycles for larger K
PALETTE = (
    "#2ca02c",
    "#1f77b4",
    "#ff7f0e",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
)


def render_scatter(
    points: np.ndarray,
    labels: np.ndarray,
    centroids: np.ndarray,
    missing_flags: np.ndarray | None = None,
    width: int = 640,
    height: int = 480,
    margin: float = 40.0,
) -> str:
    """Render a 2-D scatter as an SVG document string.

    Points are colored by ``labels``; rows flagged in ``missing_flags`` get a
    black ring; each centroid is drawn as a black dot on top.
    """
    points = np.asarray(points, dtype=np.float64)
    centroids = np.asarray(centroids, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"can only plot 2-D data, got shape {points.shape}")
    if centroids.ndim != 2 or centroids.shape[1] != 2:
        raise ValueError(f"centroids must be K x 2, got shape {centroids.shape}")
    labels = np.asarray(labels)
    if labels.shape != (points.shape[0],):
        raise ValueError("labels must have one entry per point")
    if missing_flags is None:
        missing_flags = np.zeros(points.shape[0], dtype=bool)
    missing_flags = np.asarray(missing_flags, dtype=bool)

    everything = np.vstack([points, centroids])
    lo = everything.min(axis=0)
    hi = everything.max(axis=0)
    span = np.where(hi - lo == 0.0, 1.0, hi - lo)

    def to_pixels(xy):
        px = margin + (xy[0] - lo[0]) / span[0] * (width - 2 * margin)
        # SVG y grows downward
        py = height - margin - (xy[1] - lo[1]) / span[1] * (height - 2 * margin)
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(points.shape[0]):
        px, py = to_pixels(points[i])
        color = PALETTE[int(labels[i]) % len(PALETTE)]
        if missing_flags[i]:
            parts.append(
                f'<circle class="point missing" cx="{px:.2f}" cy="{py:.2f}" r="3" '
                f'fill="{color}" fill-opacity="0.75" stroke="#000000" stroke-width="1.2"/>'
            )
        else:
            parts.append(
                f'<circle class="point" cx="{px:.2f}" cy="{py:.2f}" r="3" '
                f'fill="{color}" fill-opacity="0.75"/>'
            )
    for c in range(centroids.shape[0]):
        px, py = to_pixels(centroids[c])
        parts.append(
            f'<circle class="centroid" cx="{px:.2f}" cy="{py:.2f}" r="6" fill="#000000"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
