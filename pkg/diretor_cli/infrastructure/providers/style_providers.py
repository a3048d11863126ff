#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Estilos de referência aplicados localmente, quadro a quadro
"""

import numpy as np

from diretor_cli.domain.interfaces.adapters import FrameStyleAdapter

_LUMA = np.array([0.299, 0.587, 0.114], dtype=np.float32)

_SEPIA = np.array(
    [
        [0.393, 0.769, 0.189],
        [0.349, 0.686, 0.168],
        [0.272, 0.534, 0.131],
    ],
    dtype=np.float32,
)


class IdentityStyle(FrameStyleAdapter):
    """Não altera o quadro"""

    max_concurrency = 64

    def stylize(self, frame: np.ndarray) -> np.ndarray:
        return frame


class GrayStyle(FrameStyleAdapter):
    """Tons de cinza pela luma ITU-R 601 (R = G = B)"""

    max_concurrency = 64

    def stylize(self, frame: np.ndarray) -> np.ndarray:
        luma = np.rint(frame.astype(np.float32) @ _LUMA)
        cinza = np.clip(luma, 0, 255).astype(np.uint8)
        return np.repeat(cinza[..., None], 3, axis=2)


class SepiaStyle(FrameStyleAdapter):
    max_concurrency = 64

    def stylize(self, frame: np.ndarray) -> np.ndarray:
        tons = np.rint(frame.astype(np.float32) @ _SEPIA.T)
        return np.clip(tons, 0, 255).astype(np.uint8)
