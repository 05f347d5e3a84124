#include "rchase/error.hpp"

namespace rchase {

std::string SourceSpan::to_string() const {
    std::string where = file.empty() ? std::string("<input>") : file;
    return where + ":" + std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(SourceSpan span, const std::string& message)
    : Error(span.to_string() + ": " + message), span_(std::move(span)), detail_(message) {}

ChaseError::ChaseError(std::size_t step, const std::string& message)
    : Error("step " + std::to_string(step) + ": " + message), step_(step) {}

}  // namespace rchase
