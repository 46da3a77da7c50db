#!/usr/bin/env python3
"""Monte Carlo error estimation and the one-way key-generation protocol"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Any, List, Optional, Tuple, Union
import logging
import math

import numpy as np
from scipy.stats import norm

from analysis import ErrorMethod, ErrorReport
from channel import transmit_array
from codes import LinearCode
from config import DEFAULT_CODEWORD_BUDGET, DEFAULT_CONFIDENCE_SIGMAS, DEFAULT_MC_CHUNK_TRIALS
from decode import CodewordList, Decoder, decode_batch
from errors import DomainError, ParseError, ProtocolError
from gf4 import Word
from parallel import ChunkRunner

logger = logging.getLogger(__name__)

# Per-codeword tallies are reported once every codeword is expected this often
MIN_TRIALS_PER_CODEWORD = 100


@dataclass(frozen=True)
class MonteCarloConfig:
    """Monte Carlo run parameters; identical configs give identical results"""
    trials: int
    seed: int = 0
    decoder: Decoder = Decoder.ML
    fixed_codeword: Optional[int] = None
    threads: Optional[int] = None
    chunk_trials: int = DEFAULT_MC_CHUNK_TRIALS
    sigmas: float = DEFAULT_CONFIDENCE_SIGMAS

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.chunk_trials < 1:
            raise DomainError(f"chunk_trials must be >= 1, got {self.chunk_trials}")
        if self.sigmas <= 0:
            raise DomainError(f"sigmas must be positive, got {self.sigmas}")


def confidence_level(sigmas: float) -> float:
    """Two-sided normal coverage of +/- sigmas"""
    return float(2 * norm.cdf(sigmas) - 1)


def _as_codewords(code: Union[LinearCode, CodewordList], limit: int) -> CodewordList:
    return code if isinstance(code, CodewordList) else CodewordList.from_code(code, limit)


def estimate_error(
    code: Union[LinearCode, CodewordList],
    config: MonteCarloConfig,
    limit: int = DEFAULT_CODEWORD_BUDGET,
) -> ErrorReport:
    """Empirical decoding error: uniform codeword, transmit, decode, compare"""
    codewords = _as_codewords(code, limit)
    size = codewords.size
    if config.fixed_codeword is not None and not 0 <= config.fixed_codeword < size:
        raise DomainError(f"fixed_codeword {config.fixed_codeword} outside [0, {size})")

    def run_chunk(index: int) -> Tuple[np.ndarray, np.ndarray]:
        # one stream per chunk, so results do not depend on the thread count
        rng = np.random.default_rng([config.seed, index])
        count = min(config.chunk_trials, config.trials - index * config.chunk_trials)
        if config.fixed_codeword is None:
            sent = rng.integers(0, size, size=count)
        else:
            sent = np.full(count, config.fixed_codeword, dtype=np.int64)
        received = transmit_array(codewords.symbols[sent], rng)
        decoded, _ = decode_batch(received, codewords, config.decoder, rng)
        wrong = sent[decoded != sent]
        return np.bincount(sent, minlength=size), np.bincount(wrong, minlength=size)

    chunks = math.ceil(config.trials / config.chunk_trials)
    with ChunkRunner(config.threads, progress=chunks > 8) as runner:
        tallies = runner.map(run_chunk, range(chunks), description="trials", total=chunks)

    sent_counts = sum(t[0] for t in tallies)
    error_counts = sum(t[1] for t in tallies)
    errors = int(error_counts.sum())
    average = errors / config.trials
    half_width = config.sigmas * math.sqrt(average * (1 - average) / config.trials)

    per_codeword = None
    maximum = None
    if config.fixed_codeword is None and config.trials >= MIN_TRIALS_PER_CODEWORD * size:
        per_codeword = tuple(float(e) / s if s else 0.0 for e, s in zip(error_counts, sent_counts))
        maximum = max(max(per_codeword), average)
    logger.debug("Monte Carlo: %d errors in %d trials", errors, config.trials)

    return ErrorReport(
        method=ErrorMethod.MONTE_CARLO,
        decoder=config.decoder,
        n=codewords.n,
        size=size,
        average=average,
        maximum=maximum,
        per_codeword=per_codeword,
        trials=config.trials,
        errors=errors,
        half_width=half_width,
        sigmas=config.sigmas,
    )


# ----- key generation -----

def _raw_key_arrays(length: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    if length < 1:
        raise DomainError(f"Raw key length must be >= 1, got {length}")
    alice = rng.integers(0, 4, size=length, dtype=np.uint8)
    bob = transmit_array(alice[None, :], rng)[0]
    return alice, bob


def generate_raw_keys(length: int, rng: np.random.Generator) -> Tuple[Word, Word]:
    """Alice's uniform letters and Bob's channel output"""
    alice, bob = _raw_key_arrays(length, rng)
    return Word.from_array(alice), Word.from_array(bob)


def symbols_to_bits(symbols: np.ndarray) -> str:
    """0 -> 00, 1 -> 01, a -> 10, b -> 11"""
    return "".join(format(int(s), "02b") for s in np.ravel(symbols))


@dataclass
class ProtocolTranscript:
    """Everything Alice and Bob hold after one protocol run"""
    alice_letters: Word
    bob_letters: Word
    announcements: List[Tuple[int, ...]] = field(default_factory=list)
    sent_words: List[Word] = field(default_factory=list)
    decoded_words: List[Word] = field(default_factory=list)
    key_bits_alice: str = ""
    key_bits_bob: str = ""

    @property
    def letters_consumed(self) -> int:
        """Raw letters spent on announced positions"""
        return sum(len(positions) for positions in self.announcements)

    @property
    def letters_scanned(self) -> int:
        """Length of the raw-key prefix Alice had to look through"""
        return max((max(positions) + 1 for positions in self.announcements if positions), default=0)

    @property
    def word_errors(self) -> int:
        return sum(sent != decoded for sent, decoded in zip(self.sent_words, self.decoded_words))

    @property
    def word_error_rate(self) -> float:
        return self.word_errors / len(self.sent_words) if self.sent_words else 0.0

    @property
    def bit_errors(self) -> int:
        return sum(a != b for a, b in zip(self.key_bits_alice, self.key_bits_bob))

    def check(self):
        """Raise ProtocolError unless the transcript is internally consistent"""
        if not (len(self.announcements) == len(self.sent_words) == len(self.decoded_words)):
            raise ProtocolError("Announcement, sent and decoded lists differ in length")
        alice = self.alice_letters.to_array()
        bob = self.bob_letters.to_array()
        if alice.shape != bob.shape or np.any(alice == bob):
            raise ProtocolError("Bob holds a letter equal to Alice's")
        used = set()
        for positions, sent in zip(self.announcements, self.sent_words):
            if used.intersection(positions) or len(set(positions)) != len(positions):
                raise ProtocolError("A raw-key position was announced twice")
            used.update(positions)
            if max(positions, default=-1) >= alice.size or not np.array_equal(alice[list(positions)], sent.to_array()):
                raise ProtocolError(f"Announced positions do not spell {sent}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "words": len(self.sent_words),
            "raw_length": len(self.alice_letters),
            "letters_consumed": self.letters_consumed,
            "letters_scanned": self.letters_scanned,
            "word_errors": self.word_errors,
            "word_error_rate": self.word_error_rate,
            "key_bits": len(self.key_bits_alice),
            "bit_errors": self.bit_errors,
        }


def run_protocol(
    code: LinearCode,
    num_words: int,
    letter_budget: int,
    rng: np.random.Generator,
    limit: int = DEFAULT_CODEWORD_BUDGET,
) -> ProtocolTranscript:
    """Alice announces positions spelling random codewords; Bob ML-decodes his letters there"""
    if num_words < 0:
        raise DomainError(f"num_words must be >= 0, got {num_words}")
    codewords = CodewordList.from_code(code, limit)
    alice, bob = _raw_key_arrays(letter_budget, rng)
    # ascending positions of each letter in Alice's sequence, consumed left to right
    positions = [np.flatnonzero(alice == letter) for letter in range(4)]
    pointers = [0, 0, 0, 0]

    sent_indices: List[int] = []
    announcements: List[Tuple[int, ...]] = []
    for word_number in range(num_words):
        index = int(rng.integers(0, codewords.size))
        symbols = codewords.symbols[index]
        needed = np.bincount(symbols, minlength=4)
        if any(pointers[x] + needed[x] > len(positions[x]) for x in range(4)):
            if word_number == 0:
                raise ProtocolError(
                    f"{letter_budget} raw letters cannot spell even one codeword of length {codewords.n}"
                )
            logger.info("Raw letters exhausted after %d of %d words", word_number, num_words)
            break
        announced = []
        for x in symbols:
            announced.append(int(positions[x][pointers[x]]))
            pointers[x] += 1
        sent_indices.append(index)
        announcements.append(tuple(announced))

    transcript = ProtocolTranscript(alice_letters=Word.from_array(alice), bob_letters=Word.from_array(bob))
    if not announcements:
        return transcript

    received = bob[np.array(announcements)]
    decoded, _ = decode_batch(received, codewords, Decoder.ML, rng)
    sent = np.array(sent_indices)
    transcript.announcements = announcements
    transcript.sent_words = [codewords[i] for i in sent]
    transcript.decoded_words = [codewords[i] for i in decoded]
    transcript.key_bits_alice = symbols_to_bits(code.message_array(sent))
    transcript.key_bits_bob = symbols_to_bits(code.messages_of_array(codewords.symbols[decoded]))
    transcript.check()
    return transcript


def efficiency(code) -> float:
    """Key bits per raw letter, log2(M)/n = 2k/n"""
    return 2 * code.k / code.n


# ----- transcript file -----

_SECTIONS = ("RAW-ALICE", "RAW-BOB", "ANNOUNCE", "SENT", "DECODED", "KEY-ALICE", "KEY-BOB")


def _letters(word: Word) -> str:
    return "".join("ABCD"[s] for s in word.to_array())


def format_transcript(transcript: ProtocolTranscript) -> str:
    lines = ["# anticode protocol transcript"]
    lines += ["RAW-ALICE", _letters(transcript.alice_letters)]
    lines += ["RAW-BOB", _letters(transcript.bob_letters)]
    lines += ["ANNOUNCE"] + [" ".join(str(p) for p in positions) for positions in transcript.announcements]
    lines += ["SENT"] + [str(word) for word in transcript.sent_words]
    lines += ["DECODED"] + [str(word) for word in transcript.decoded_words]
    lines += ["KEY-ALICE", transcript.key_bits_alice, "KEY-BOB", transcript.key_bits_bob]
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> ProtocolTranscript:
    sections: Dict[str, List[str]] = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in _SECTIONS:
            current = line
            sections[current] = []
        elif current is None:
            raise ParseError(f"Transcript line outside any section: {line!r}")
        else:
            sections[current].append(line)
    missing = [name for name in _SECTIONS if name not in sections]
    if missing:
        raise ParseError(f"Transcript is missing section(s): {', '.join(missing)}")

    def single(name: str) -> str:
        values = sections[name]
        if len(values) > 1:
            raise ParseError(f"Section {name} must hold one line")
        return values[0] if values else ""

    try:
        announcements = [tuple(int(p) for p in line.split()) for line in sections["ANNOUNCE"]]
    except ValueError as e:
        raise ParseError(f"Bad ANNOUNCE line: {e}") from e
    for name in ("KEY-ALICE", "KEY-BOB"):
        if set(single(name)) - {"0", "1"}:
            raise ParseError(f"Section {name} must hold bits")
    return ProtocolTranscript(
        alice_letters=Word.parse(single("RAW-ALICE")),
        bob_letters=Word.parse(single("RAW-BOB")),
        announcements=announcements,
        sent_words=[Word.parse(line) for line in sections["SENT"]],
        decoded_words=[Word.parse(line) for line in sections["DECODED"]],
        key_bits_alice=single("KEY-ALICE"),
        key_bits_bob=single("KEY-BOB"),
    )


def write_transcript(transcript: ProtocolTranscript, path: Path) -> Path:
    path = Path(path)
    path.write_text(format_transcript(transcript))
    return path


def read_transcript(path: Path) -> ProtocolTranscript:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"Cannot read transcript {path}: {e}") from e
    return parse_transcript(text)
