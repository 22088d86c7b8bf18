"""Decision procedures with checkable certificates for the generalized word
problem in amalgamated free products ``(A * B; H = K)`` whose amalgamated
subgroups are normal and satisfy the maximum condition."""

from .amalgam import (AmalgamGroup, SearchLimits, bs_amalgam, build_amalgam, decide_membership,
                      separate_amalgam)
from .certificates import Certificate, decode, encode, verify
from .specfile import parse_amalgam_spec
from .words import Word, format_word, parse_word, parse_word_list

__version__ = "0.1.0"

__all__ = ["AmalgamGroup", "Certificate", "SearchLimits", "Word", "bs_amalgam", "build_amalgam",
           "decide_membership", "decode", "encode", "format_word", "parse_amalgam_spec",
           "parse_word", "parse_word_list", "separate_amalgam", "verify"]
