"""Rank-deficient matrix power function: FO KEM with implicit rejection and a
deterministic signature wrapper."""

from .codec import FramingError
from .dsa import (DsPublicKey, DsSecretKey, MerkleLamport, Signature, VerifyOutcome,
                  keygen_ds, sign_ds, verify_ds)
from .kem import (Ciphertext, KemPublicKey, KemSecretKey, decaps, encapsulate, encaps,
                  keygen)
from .params import L5_N7, MICRO, PROFILES, TOY_997, Params, get_profile

__all__ = [
    "FramingError",
    "DsPublicKey", "DsSecretKey", "MerkleLamport", "Signature", "VerifyOutcome",
    "keygen_ds", "sign_ds", "verify_ds",
    "Ciphertext", "KemPublicKey", "KemSecretKey", "decaps", "encapsulate", "encaps", "keygen",
    "L5_N7", "MICRO", "PROFILES", "TOY_997", "Params", "get_profile",
]
