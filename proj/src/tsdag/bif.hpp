#pragma once

#include <stdexcept>
#include <string>

#include "tsdag/discrete_net.hpp"

namespace tsdag {

/// Parse failure with source position. `semantic` distinguishes violations of
/// the model rules (bad row sums, undeclared variables, cycles) from plain
/// syntax errors.
class BifError : public std::runtime_error {
public:
    BifError(std::string msg, int line, int col, bool semantic);
    int line() const { return line_; }
    int col() const { return col_; }
    bool semantic() const { return semantic_; }

private:
    int line_, col_;
    bool semantic_;
};

/// Supported grammar:
///   network <name> { }
///   variable <name> { type discrete [ k ] { v1, ..., vk }; }
///   probability ( <child> ) { table p1, ..., pk; }
///   probability ( <child> | <parents> ) { (<parent values>) p1, ..., pk; ... }
/// Whitespace-insensitive, // comments. Probability rows must sum to 1
/// within 1e-6 and are renormalized exactly on ingestion.
DiscreteNet parse_bif(const std::string& text);

/// Canonical form: declaration order preserved, rows in lexicographic parent
/// order, probabilities printed with full precision. parse(serialize(x))
/// reproduces x exactly.
std::string serialize_bif(const DiscreteNet& net, const std::string& network_name = "net");

}  // namespace tsdag
