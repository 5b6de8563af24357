"""Monadic one-step logics: syntax, models, fragments, normal forms."""

from .ast import (DIALECTS, FO1, FOE1, FOE1INF, And, DialectError, Eq, Exists,
                  ExistsInf, Forall, ForallInf, Formula, Neq, NegPred,
                  OneStepFormula, Or, Pred, W, TOP, BOT, all_distinct, conj,
                  disj, dual, expand_sugar, free_vars, is_positive,
                  min_dialect, predicates, pretty, rank, rename_pred,
                  sentence, type_atom)
from .fragments import (FragmentFlags, cocontinuous_entry, continuous_entry,
                        fragment_check, in_cocontinuous_fragment,
                        in_continuous_fragment, match_nabla, separates,
                        separation_sufficient)
from .models import (OMEGA, OneStepModel, WeightedOneStepModel, all_models,
                     all_weighted_models, eval_finite, eval_weighted,
                     min_valuations, model_of_types, weighted)
from .normalform import (BasicForm, BasicFormDisjunct, NotContinuousError,
                         NotPositiveError, ProfileBlowupError, counterexample,
                         diamond_translate, equivalent, expand,
                         expand_disjunct, satisfying_restriction_exists,
                         to_basic_form, to_continuous_basic_form)
from .parse import ParseError, parse, parse_formula

__all__ = [n for n in dir() if not n.startswith("_")]
