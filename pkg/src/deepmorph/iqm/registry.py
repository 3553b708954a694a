"""Fixed, versioned ordering of the image-quality measures."""

import hashlib

REGISTRY_VERSION = "iqm-v1"

FULL_REFERENCE = (
    "mse", "psnr", "snr", "sc", "md", "ad", "nae", "ramd", "lmse", "nxc",
    "mas", "mams", "ted", "tcd", "sme", "spe", "gme", "gpe", "ssim",
)

NO_REFERENCE = (
    "hlfi", "blur_crete", "blur_marziliano", "specularity_ratio",
    "chroma_moment_1", "chroma_moment_2", "chroma_moment_3",
    "chroma_moment_4", "chroma_moment_5", "chroma_moment_6",
    "color_diversity",
)

MEASURES = FULL_REFERENCE + NO_REFERENCE
INDEX = {name: i for i, name in enumerate(MEASURES)}

assert len(INDEX) == len(MEASURES)


def names_hash(names) -> bytes:
    """SHA-256 over the newline-joined column names (identifies a layout)."""
    return hashlib.sha256("\n".join(names).encode("utf-8")).digest()


REGISTRY_HASH = names_hash(MEASURES)
