#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ebpd/model.hpp"
#include "ebpd/schema.hpp"

namespace ebpd::text {

struct SourceSpan {
  std::string file = "<input>";
  int line = 1;
  int column = 1;
  int length = 1;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;
};

std::string to_string(const ParseDiagnostic& d);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic d);
  const ParseDiagnostic& diagnostic() const { return diag_; }

 private:
  ParseDiagnostic diag_;
};

/// Post-parse cross-document validation failures (experience or schema
/// checked against a domain).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Document parsers. Keywords are case-insensitive, identifiers are not;
// `;` starts a line comment. All errors carry a span into the source text.
model::Domain parse_domain(std::string_view text, std::string_view filename = "<input>");
model::Experience parse_experience(std::string_view text, std::string_view filename = "<input>");
model::Problem parse_problem(std::string_view text, std::string_view filename = "<input>");
schema::ActivitySchema parse_schema(std::string_view text, std::string_view filename = "<input>");

/// A library file is a sequence of activity-schema documents.
std::vector<schema::ActivitySchema> parse_schema_library(std::string_view text,
                                                         std::string_view filename = "<input>");

/// Parses a standalone `(:scope ...)` form.
logic::ThreeValuedStructure parse_scope(std::string_view text,
                                        std::string_view filename = "<input>");

// Canonical serializers; parse(serialize(x)) is structurally x.
std::string serialize_domain(const model::Domain& d);
std::string serialize_experience(const model::Experience& e);
std::string serialize_problem(const model::Problem& p);
std::string serialize_schema(const schema::ActivitySchema& s);
std::string serialize_schema_library(const std::vector<schema::ActivitySchema>& lib);

// Cross-document checks: plan actions name known concrete operators with the
// right arity, schema items name known abstract operators.
void validate_against_domain(const model::Experience& e, const model::Domain& d);
void validate_against_domain(const model::Problem& p, const model::Domain& d);
void validate_against_domain(const schema::ActivitySchema& s, const model::Domain& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ebpd::text
