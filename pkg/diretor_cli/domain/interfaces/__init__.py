"""
Interfaces dos adaptadores externos
"""

from .adapters import CaptionerAdapter, CaptionRequest, ChatAdapter, FrameStyleAdapter

__all__ = ["CaptionRequest", "CaptionerAdapter", "ChatAdapter", "FrameStyleAdapter"]
