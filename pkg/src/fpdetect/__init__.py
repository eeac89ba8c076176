"""Real-time fingerprint presence detection by ridge orientation check."""

from .binarization import BinaryImage, ThresholdPolicy, binarize, choose_threshold, otsu_threshold
from .detector import DetectionResult, DetectorConfig, detect, detect_batch, effective_threshold
from .imageio import GrayImage, center_roi, load_pgm, load_raw, save_pgm, save_raw
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "BinaryImage",
    "DetectionResult",
    "DetectorConfig",
    "GrayImage",
    "ThresholdPolicy",
    "binarize",
    "center_roi",
    "choose_threshold",
    "detect",
    "detect_batch",
    "effective_threshold",
    "load_pgm",
    "load_raw",
    "otsu_threshold",
    "save_pgm",
    "save_raw",
]

__version__ = "0.1.0"
