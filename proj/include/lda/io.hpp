#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "lda/attack.hpp"
#include "lda/protocol.hpp"

namespace lda {

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical transcript document. Keys appear in schema order and matrices
/// as arrays of rows of decimal strings, so identical runs serialize to
/// identical bytes. The private section (seed, words, agreed key) is only
/// written when include_private is set.
std::string write_transcript(const HonestRun &run, bool include_private);
std::string write_transcript(const Transcript &t);

/// Parses and validates a transcript document. Throws ParseError.
Transcript read_transcript(const std::string &text);

/// The agreed key stored in a private fixture document. Throws ParseError
/// if the document has no private section.
Matrix read_fixture_key(const std::string &text);

/// Attack report document. Wall time is only included on request so that
/// the default output is reproducible byte for byte.
std::string write_report(const AttackReport &report, bool include_timing);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &text);

}  // namespace lda
