"""Fixpoint calculi over one-step modalities."""

from .ast import (MAnd, MBOT, MOr, MTOP, Modal, Mu, MuFormula, MuParseError,
                  NegProp, Nu, Prop, IllFormedError, bound_letters, box,
                  check_wf, dia, free_letters, is_box, is_dia, mand,
                  modal_dialect, mor, negate, parse, pretty, refresh,
                  simplify, subformulas, substitute)
from .bridge import NotFO1Error, fo1_modal_bridge
from .classify import (FragmentReport, classify, in_alternation_free,
                       in_cocontinuous, in_conoetherian, in_continuous,
                       in_continuous_calculus, in_noetherian, is_guarded,
                       is_plain_modal)
from .game import EvalGame, binder_priorities, build_eval_game, game_value, modality_moves
from .guard import guard_transform
from .semantics import (UnboundLetterError, approximant_trace, holds_at_init,
                        onestep_model_at, open_eval, semantics_eval)

__all__ = [n for n in dir() if not n.startswith("_")]
