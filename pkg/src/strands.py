##module for nucleotide strands: the vocabulary every tube operation speaks
from typing import Iterable

from src.errors import StrandError

NUCLEOTIDES = "ACGT"

# Watson-Crick pairing, position-wise (no reversal)
_PAIRING = str.maketrans("ACGT", "TGCA")

Strand = str


def make_strand(text: str) -> Strand:
    for position, symbol in enumerate(text):
        if symbol not in NUCLEOTIDES:
            raise StrandError(text, position)
    return text


def is_strand(text: str) -> bool:
    return all(symbol in NUCLEOTIDES for symbol in text)


def pair(nucleotide: str) -> str:
    return nucleotide.translate(_PAIRING)


def complement(s: Strand) -> Strand:
    return s.translate(_PAIRING)


def concat(parts: Iterable[Strand]) -> Strand:
    return "".join(parts)


def contains(s: Strand, pattern: Strand) -> bool:
    # empty pattern always matches
    return pattern in s
