#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "amoeba/amoeba.hpp"
#include "amoeba/exposum.hpp"
#include "amoeba/lattice.hpp"

namespace amoeba {

inline constexpr std::string_view kInputSchema = "expsum-input/1";
inline constexpr std::string_view kReportSchema = "expsum-report/1";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Evaluates the closed expression language used for generator entries:
// decimal literals, pi, sqrt(...), + - * / and parentheses. Throws ParseError.
double evaluate_exact_form(std::string_view text);

// A generator entry: the literal as written plus its double value.
struct GeneratorEntry {
  std::string text;  // empty for plain JSON numbers
  double value = 0.0;
  bool operator==(const GeneratorEntry&) const = default;
};

struct InputDocument {
  std::string name;
  std::size_t n = 0;
  std::vector<std::vector<GeneratorEntry>> generators;  // m rows of n entries
  std::optional<IntMatrix> gamma_basis;
  std::vector<Term> terms;

  std::vector<RealVector> generator_values() const;
  ExponentialSum to_sum() const;
  LatticeIso build_iso() const;

  bool operator==(const InputDocument& other) const;
};

InputDocument parse_input(const nlohmann::json& j);
InputDocument load_input(const std::string& path);
nlohmann::json to_json(const InputDocument& doc);

struct Provenance {
  std::string tool_version{kToolVersion};
  std::string kernel_isa;
  std::size_t threads = 1;
  ScanOptions scan{};
};

// The report document; re-checks the bound chain and that every number is finite.
nlohmann::json report_to_json(const AmoebaReport& report, const InputDocument& input, const LatticeIso& iso,
                              const Provenance& provenance);

// "V ≤ ρ≈R ≤ Λ < υ" with the numbers filled in.
std::string bounds_line(const AmoebaReport& report);

}  // namespace amoeba
