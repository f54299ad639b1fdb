"""Saliency-aware visual augmentation for speech-rich video."""

__version__ = "0.1.0"
