"""Table-driven reference implementations of LBlock and LiCi.

These are the classical ground-truth oracles the gate-level circuits are
verified against.  Both ciphers accept a ``rounds`` parameter so that
round-reduced circuits can be diffed cheaply against the reference.

Conventions (used consistently across the whole package):
  * bit 0 is the least significant bit; "leftmost" means most significant;
  * nibble ``j`` of a 32-bit word occupies bits ``4j+3 .. 4j``;
  * LBlock state is ``L || R`` (L the high 32 bits), LiCi state ``X || Y``.

LBlock assembles its 64-bit ciphertext with the two halves exchanged
after the last round (C = X32 || X33 in the design specification's
numbering); round-reduced outputs are the raw Feistel state ``L_r || R_r``.
"""
from __future__ import annotations

MASK32 = 0xFFFFFFFF

LBLOCK_ROUNDS = 32
LICI_ROUNDS = 31

# LBlock S-boxes s0..s9.  s0..s7 act on the state nibbles (s_j on nibble j),
# s9/s8 on the top two key nibbles during the key update.
LBLOCK_SBOXES = (
    (0xE, 0x9, 0xF, 0x0, 0xD, 0x4, 0xA, 0xB, 0x1, 0x2, 0x8, 0x3, 0x7, 0x6, 0xC, 0x5),
    (0x4, 0xB, 0xE, 0x9, 0xF, 0xD, 0x0, 0xA, 0x7, 0xC, 0x5, 0x6, 0x2, 0x8, 0x1, 0x3),
    (0x1, 0xE, 0x7, 0xC, 0xF, 0xD, 0x0, 0x6, 0xB, 0x5, 0x9, 0x3, 0x2, 0x4, 0x8, 0xA),
    (0x7, 0x6, 0x8, 0xB, 0x0, 0xF, 0x3, 0xE, 0x9, 0xA, 0xC, 0xD, 0x5, 0x2, 0x4, 0x1),
    (0xE, 0x5, 0xF, 0x0, 0x7, 0x2, 0xC, 0xD, 0x1, 0x8, 0x4, 0x9, 0xB, 0xA, 0x6, 0x3),
    (0x2, 0xD, 0xB, 0xC, 0xF, 0xE, 0x0, 0x9, 0x7, 0xA, 0x6, 0x3, 0x1, 0x8, 0x4, 0x5),
    (0xB, 0x9, 0x4, 0xE, 0x0, 0xF, 0xA, 0xD, 0x6, 0xC, 0x5, 0x7, 0x3, 0x8, 0x1, 0x2),
    (0xD, 0xA, 0xF, 0x0, 0xE, 0x4, 0x9, 0xB, 0x2, 0x1, 0x8, 0x3, 0x7, 0x5, 0xC, 0x6),
    (0x8, 0x7, 0xE, 0x5, 0xF, 0xD, 0x0, 0x6, 0xB, 0xC, 0x9, 0xA, 0x2, 0x4, 0x1, 0x3),
    (0xB, 0x5, 0xF, 0x0, 0x7, 0x2, 0x9, 0xD, 0x4, 0x8, 0x1, 0xC, 0xE, 0xA, 0x3, 0x6),
)

# The LiCi design tabulates 15 entries; the x=7 column is missing from the
# published table.  S(7)=8 is forced: the entries must form a permutation
# and 8 is the only absent output value.
LICI_SBOX = (0x3, 0xF, 0xE, 0x1, 0x0, 0xA, 0x5, 0x8,
             0xC, 0x4, 0xB, 0x2, 0x9, 0x7, 0x6, 0xD)

SBOX_TABLES = {f"s{i}": LBLOCK_SBOXES[i] for i in range(10)}
SBOX_TABLES["lici"] = LICI_SBOX

# Diffusion permutation: destination nibble j takes source nibble
# LBLOCK_PERM_SRC[j]  (Z'7..Z'0 = Z6, Z4, Z7, Z5, Z2, Z0, Z3, Z1).
LBLOCK_PERM_SRC = (1, 3, 0, 2, 5, 7, 4, 6)


def rol(x: int, r: int, width: int) -> int:
    r %= width
    mask = (1 << width) - 1
    return ((x << r) | (x >> (width - r))) & mask


def ror(x: int, r: int, width: int) -> int:
    return rol(x, width - r, width)


def lblock_sbox(name: str, nibble: int) -> int:
    """Look up one of the s0..s9 tables."""
    if name not in SBOX_TABLES or name == "lici":
        raise KeyError(f"unknown LBlock S-box {name!r}")
    return SBOX_TABLES[name][nibble]


def lblock_permute(z: int) -> int:
    """The eight-nibble diffusion permutation of the round function."""
    out = 0
    for j, src in enumerate(LBLOCK_PERM_SRC):
        out |= ((z >> (4 * src)) & 0xF) << (4 * j)
    return out


def _lblock_confuse(x: int) -> int:
    y = 0
    for j in range(8):
        y |= LBLOCK_SBOXES[j][(x >> (4 * j)) & 0xF] << (4 * j)
    return y


def lblock_key_update(key: int, update_index: int) -> tuple[int, int]:
    """One LBlock key-register update.

    Rotate left 29, push the two leftmost nibbles through s9 / s8, XOR the
    update index into bits k50..k46.  Returns ``(next_round_key, key)``
    where the round key is the updated register's leftmost 32 bits.
    """
    if not 1 <= update_index <= 31:
        raise ValueError(f"update_index must be in 1..31, got {update_index}")
    key = rol(key, 29, 80)
    key = (key & ~(0xF << 76)) | (LBLOCK_SBOXES[9][(key >> 76) & 0xF] << 76)
    key = (key & ~(0xF << 72)) | (LBLOCK_SBOXES[8][(key >> 72) & 0xF] << 72)
    key ^= update_index << 46
    return (key >> 48) & MASK32, key


def lblock_round_keys(key: int, rounds: int) -> list[int]:
    """Round keys K1..K_rounds (K1 is the initial leftmost 32 bits)."""
    rks = [(key >> 48) & MASK32]
    for i in range(1, rounds):
        rk, key = lblock_key_update(key, i)
        rks.append(rk)
    return rks


def lblock_key_state(key: int, rounds: int) -> int:
    """Key register contents after a ``rounds``-round encryption.

    The update for round ``i`` runs right after round ``i``; the full
    cipher performs 31 updates (there is no update after round 32), so a
    round-reduced run of ``r`` rounds performs ``min(r, 31)`` updates.
    """
    for i in range(1, min(rounds, LBLOCK_ROUNDS - 1) + 1):
        _, key = lblock_key_update(key, i)
    return key


def lblock_encrypt(plaintext: int, key: int, rounds: int = LBLOCK_ROUNDS) -> int:
    if not 1 <= rounds <= LBLOCK_ROUNDS:
        raise ValueError(f"rounds must be in 1..{LBLOCK_ROUNDS}, got {rounds}")
    rks = lblock_round_keys(key, rounds)
    left = (plaintext >> 32) & MASK32
    right = plaintext & MASK32
    for rk in rks:
        f = lblock_permute(_lblock_confuse(left ^ rk))
        left, right = f ^ rol(right, 8, 32), left
    if rounds == LBLOCK_ROUNDS:
        left, right = right, left
    return (left << 32) | right


def _lblock_decrypt(ciphertext: int, key: int, rounds: int = LBLOCK_ROUNDS) -> int:
    """Test-only inverse of :func:`lblock_encrypt`."""
    rks = lblock_round_keys(key, rounds)
    left = (ciphertext >> 32) & MASK32
    right = ciphertext & MASK32
    if rounds == LBLOCK_ROUNDS:
        left, right = right, left
    for rk in reversed(rks):
        prev_left = right
        f = lblock_permute(_lblock_confuse(prev_left ^ rk))
        left, right = prev_left, ror(left ^ f, 8, 32)
    return (left << 32) | right


# -- LiCi -----------------------------------------------------------------

def _lici_confuse(x: int) -> int:
    y = 0
    for j in range(8):
        y |= LICI_SBOX[(x >> (4 * j)) & 0xF] << (4 * j)
    return y


def lici_key_update(key: int, update_index: int) -> tuple[int, int, int]:
    """One LiCi key-register update.

    Returns ``(rk2, rk1, key)``: the round keys extracted from the
    *current* register (rk2 = bits 63..32, rk1 = bits 31..0) followed by
    the updated register (rotate left 13, S-box on the two lowest nibbles,
    XOR the 5-bit round counter into K63..K59).
    """
    if update_index < 1:
        raise ValueError("update_index must be positive")
    rk2 = (key >> 32) & MASK32
    rk1 = key & MASK32
    key = rol(key, 13, 128)
    key = (key & ~0xF) | LICI_SBOX[key & 0xF]
    key = (key & ~0xF0) | (LICI_SBOX[(key >> 4) & 0xF] << 4)
    key ^= (update_index & 0x1F) << 59
    return rk2, rk1, key


def lici_round_keys(key: int, rounds: int) -> list[tuple[int, int]]:
    """(rk2, rk1) pairs for rounds 1..rounds."""
    pairs = []
    for i in range(1, rounds + 1):
        rk2, rk1, key = lici_key_update(key, i)
        pairs.append((rk2, rk1))
    return pairs


def lici_key_state(key: int, rounds: int) -> int:
    """Key register after ``rounds`` rounds: ``min(rounds, 30)`` updates."""
    for i in range(1, min(rounds, LICI_ROUNDS - 1) + 1):
        _, _, key = lici_key_update(key, i)
    return key


def lici_encrypt(plaintext: int, key: int, rounds: int = LICI_ROUNDS) -> int:
    if not 1 <= rounds <= LICI_ROUNDS:
        raise ValueError(f"rounds must be in 1..{LICI_ROUNDS}, got {rounds}")
    xw = (plaintext >> 32) & MASK32
    yw = plaintext & MASK32
    for rk2, rk1 in lici_round_keys(key, rounds):
        s = _lici_confuse(xw)
        x_next = rol(s ^ yw ^ rk1, 3, 32)
        y_next = ror(s ^ x_next ^ rk2, 7, 32)
        xw, yw = x_next, y_next
    return (xw << 32) | yw


def _lici_decrypt(ciphertext: int, key: int, rounds: int = LICI_ROUNDS) -> int:
    """Test-only inverse of :func:`lici_encrypt`."""
    xw = (ciphertext >> 32) & MASK32
    yw = ciphertext & MASK32
    for rk2, rk1 in reversed(lici_round_keys(key, rounds)):
        s_prev = rol(yw, 7, 32) ^ xw ^ rk2
        x_prev = 0
        for j in range(8):
            x_prev |= LICI_SBOX.index((s_prev >> (4 * j)) & 0xF) << (4 * j)
        y_prev = ror(xw, 3, 32) ^ s_prev ^ rk1
        xw, yw = x_prev, y_prev
    return (xw << 32) | yw
