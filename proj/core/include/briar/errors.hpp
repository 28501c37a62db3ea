#pragma once

#include <stdexcept>
#include <string>

namespace briar {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BRIAR_ERROR_TYPE(Name)                 \
  struct Name : Error {                        \
    explicit Name(const std::string& what_arg) \
        : Error(std::string(#Name ": ") + what_arg) {} \
  }

BRIAR_ERROR_TYPE(InvalidLetter);
BRIAR_ERROR_TYPE(UnsupportedSignature);
BRIAR_ERROR_TYPE(IncidenceError);
BRIAR_ERROR_TYPE(IllegalCollapse);
BRIAR_ERROR_TYPE(NotReduced);
BRIAR_ERROR_TYPE(UnknownWord);
BRIAR_ERROR_TYPE(InactiveVertex);
BRIAR_ERROR_TYPE(IncompatibleForest);
BRIAR_ERROR_TYPE(NotInDalpha);
BRIAR_ERROR_TYPE(BadEdgeChoice);
BRIAR_ERROR_TYPE(BallNotFinite);
BRIAR_ERROR_TYPE(ExchangeImpossible);
BRIAR_ERROR_TYPE(OverlappingSets);
BRIAR_ERROR_TYPE(HypothesesNotMet);
BRIAR_ERROR_TYPE(NotFound);
BRIAR_ERROR_TYPE(NotAPath);
BRIAR_ERROR_TYPE(IncompatibleEdges);
BRIAR_ERROR_TYPE(SearchExhausted);
BRIAR_ERROR_TYPE(EndpointsTooLow);
BRIAR_ERROR_TYPE(NotOneEnded);
BRIAR_ERROR_TYPE(NoIncreasingMove);
BRIAR_ERROR_TYPE(SignatureMismatch);
BRIAR_ERROR_TYPE(RelationFailed);
BRIAR_ERROR_TYPE(ParseError);

#undef BRIAR_ERROR_TYPE

}  // namespace briar
