#include "xim/errors.hpp"

namespace xim {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::log_of_zero_constant_term: return "LogOfZeroConstantTerm";
    case Errc::compose_nonzero_constant_term: return "ComposeNonzeroConstantTerm";
    case Errc::order_mismatch: return "OrderMismatch";
    case Errc::order_overflow: return "OrderOverflow";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::integrand_evaluation_failure: return "IntegrandEvaluationFailure";
    case Errc::window_too_small: return "WindowTooSmall";
    case Errc::domain_error: return "DomainError";
    case Errc::tail_budget_too_loose: return "TailBudgetTooLoose";
    case Errc::route_domain_error: return "RouteDomainError";
    case Errc::series_truncation_error: return "SeriesTruncationError";
    case Errc::near_zero_singularity: return "NearZeroSingularity";
    case Errc::contour_divergence: return "ContourDivergence";
    case Errc::confluence_unstable: return "ConfluenceUnstable";
    case Errc::non_decaying_truncation: return "NonDecayingTruncation";
    case Errc::range_error: return "RangeError";
    case Errc::convergence_domain_error: return "ConvergenceDomainError";
    case Errc::pole_at_zero: return "PoleAtZero";
    case Errc::singular_resolvent: return "SingularResolvent";
    case Errc::insufficient_samples: return "InsufficientSamples";
    case Errc::non_monotone_region: return "NonMonotoneRegion";
    case Errc::unknown_key: return "UnknownKey";
    case Errc::type_error: return "TypeError";
    case Errc::missing_file: return "MissingFile";
  }
  return "UnknownError";
}

}  // namespace xim
