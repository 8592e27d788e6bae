#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "focklab/channel.hpp"
#include "focklab/classical.hpp"
#include "focklab/moe.hpp"
#include "focklab/wigner.hpp"

namespace focklab {

// JSON schema: complex numbers are [re, im] pairs; environments are
// {"kind": "fock"|"thermal"|"diagonal"|"pure"|"mixed", ...} with "n",
// "nbar", "populations", "amplitudes" or "matrix" as the kind requires.
// Malformed documents raise DomainError.
Environment environment_from_json(const std::string& text);
std::string to_json(const Environment& env);

// {"kind": "attenuator"|"amplifier", "eta"|"gain": x, "environment": {...},
// "config": {...}} — config keys are optional and default as in
// ChannelConfig.
ChannelSpec channel_from_json(const std::string& text);
std::string to_json(const ChannelSpec& spec);

// {"kind": "gaussian"|"uniform"|"laplace"|"gaussian-mixture",
//  "variance": v | "weights"/"means"/"variances": [...]}
NoiseDensity noise_from_json(const std::string& text);

std::string to_json(const MoeReport& report);
std::string to_json(const WignerGrid& grid);

// %.12g, the fixed numeric dialect of every CSV the tool writes.
std::string format_number(double v);

// Comma-separated, '.' decimal, '#'-prefixed comment lines.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

}  // namespace focklab
