"""Qubit and gate budgets for loading Earth-observation tensors.

An image is an I x J x K tensor (two spatial axes, K spectral bands or
scattering features). Costs are counted either per pixel (feature vector
loaded alone) or for the whole image, under three loading styles: one
rotation per feature, amplitude loading into log2(N) qubits, or a
compressed front end that fixes the feature count.

No state-preparation circuits are produced here, only budget arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

# Gates per amplitude for amplitude loading. Published whole-image numbers
# imply constants between roughly 0.08 and 0.23 gates/amplitude depending on
# the image; the geometric mean keeps both within a factor of two.
C_AMP = 0.137


class Modality(Enum):
    HYPERSPECTRAL = "hyperspectral"
    MULTISPECTRAL = "multispectral"
    POLARIMETRIC = "polarimetric"


@dataclass(frozen=True)
class EOTensorSpec:
    """Shape and kind of a remotely sensed image tensor.

    Polarimetric pixels hold a 2x2 scattering matrix rather than spectral
    bands: 3 informative features when the matrix is symmetric, 4 otherwise,
    so K is restricted to {3, 4} there and ``symmetric_scattering`` is only
    meaningful for that modality.
    """

    i: int
    j: int
    k: int
    modality: Modality
    symmetric_scattering: bool = False

    def __post_init__(self) -> None:
        if min(self.i, self.j, self.k) < 1:
            raise ValueError("tensor dimensions must be >= 1")
        if self.modality is Modality.POLARIMETRIC:
            if self.k not in (3, 4):
                raise ValueError("polarimetric images have K in {3, 4}")
        elif self.symmetric_scattering:
            raise ValueError("symmetric_scattering applies to polarimetric only")

    @property
    def data_points(self) -> int:
        return self.i * self.j

    @property
    def features(self) -> int:
        if self.modality is Modality.POLARIMETRIC and self.symmetric_scattering:
            return 3
        return self.k

    @property
    def n_elements(self) -> int:
        return self.i * self.j * self.k

    @property
    def label(self) -> str:
        tag = f"{self.i}x{self.j}x{self.k}:{self.modality.value}"
        return tag + ":symmetric" if self.symmetric_scattering else tag


@dataclass(frozen=True)
class AnglePerFeature:
    """One rotation gate per feature value."""


@dataclass(frozen=True)
class Amplitude:
    """Values loaded as amplitudes of a log2(N)-qubit register."""


@dataclass(frozen=True)
class HybridCompressed:
    """Classical front end compresses to a fixed feature count first."""

    target_features: int

    def __post_init__(self) -> None:
        if self.target_features < 1:
            raise ValueError("target_features must be >= 1")


EncodingScheme = AnglePerFeature | Amplitude | HybridCompressed

_SPEC_RE = re.compile(
    r"^(\d+)x(\d+)x(\d+):(hyperspectral|multispectral|polarimetric)(:symmetric)?$"
)


def parse_tensor_spec(text: str) -> EOTensorSpec:
    """Parse ``IxJxK:modality`` with an optional ``:symmetric`` suffix."""
    m = _SPEC_RE.match(text.strip().lower())
    if m is None:
        raise ValueError(
            f"bad tensor spec {text!r}; expected IxJxK:modality[:symmetric]"
        )
    return EOTensorSpec(
        int(m.group(1)),
        int(m.group(2)),
        int(m.group(3)),
        Modality(m.group(4)),
        m.group(5) is not None,
    )


def dataset_profile(spec: EOTensorSpec) -> dict[str, int]:
    """Dataset size as seen by a per-pixel model: sample count and features."""
    return {"data_points": spec.data_points, "features": spec.features}


def encoding_cost(
    spec: EOTensorSpec, scheme: EncodingScheme, per_pixel: bool = False
) -> dict[str, int]:
    """Qubits and gates to load one pixel or the whole image.

    Polarimetric pixels spend one extra gate on the scattering phase beyond
    the per-feature rotations, which is what caps them at five gates.
    """
    if isinstance(scheme, HybridCompressed):
        f = scheme.target_features
        return {"qubits": f, "gates": f}
    n = spec.features if per_pixel else spec.n_elements
    if isinstance(scheme, AnglePerFeature):
        gates = n
        if per_pixel and spec.modality is Modality.POLARIMETRIC:
            gates += 1
        return {"qubits": n, "gates": gates}
    if isinstance(scheme, Amplitude):
        qubits = math.ceil(math.log2(n)) if n > 1 else 0
        return {"qubits": qubits, "gates": max(1, round(C_AMP * n))}
    raise TypeError(f"unknown encoding scheme {scheme!r}")


def compare_modalities(
    specs: list[EOTensorSpec], scheme: EncodingScheme
) -> list[dict[str, object]]:
    """Rank tensor specs by per-pixel gate cost, cheapest first.

    Each row carries both the per-pixel and whole-image budgets; ties break
    on the spec label so the order is reproducible.
    """
    if not specs:
        raise ValueError("specs must be non-empty")
    rows: list[dict[str, object]] = []
    for spec in specs:
        pp = encoding_cost(spec, scheme, per_pixel=True)
        whole = encoding_cost(spec, scheme, per_pixel=False)
        rows.append(
            {
                "label": spec.label,
                "data_points": spec.data_points,
                "features": spec.features,
                "per_pixel_qubits": pp["qubits"],
                "per_pixel_gates": pp["gates"],
                "whole_image_qubits": whole["qubits"],
                "whole_image_gates": whole["gates"],
            }
        )
    rows.sort(key=lambda r: (r["per_pixel_gates"], r["label"]))
    return rows
