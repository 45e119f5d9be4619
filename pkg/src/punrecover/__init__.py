"""Target recovery for Hindi-English code-mixed puns."""

from .langmodel import BigramModel, ContextWord
from .lexicon import LanguageTag, Lexicon, TaggedToken, load_lexicon, tag
from .phonetics import CostModel, PhoneticForm, orthographic_distance, phonetic_distance
from .recovery import RecoveryResult, Resources, Settings, TargetHypothesis, recover
from .text import Token, tokenize

__version__ = "0.1.0"
