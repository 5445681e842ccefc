#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchain/chain.hpp"

namespace spinchain {

class UnrealizableOffsets : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One frequency-addressed rectangular RF pulse. The drive frequency is
// drive_frequency(params, k, mu, nu); the duration is angle / rabi.
struct PulseSpec {
  int k = 0;          // target qubit
  int mu = 0;         // nearest-neighbour resonance offset
  int nu = 0;         // second-neighbour resonance offset
  double phase = 0.0;  // phi, radians
  double angle = 0.0;  // theta, nominal rotation angle, radians
  double rabi = 0.0;   // Omega, angular frequency

  double duration() const { return angle / rabi; }
};

// Throws UnrealizableOffsets / std::invalid_argument if the pulse cannot be
// realized on the chain (no neighbour configuration matches, nonpositive
// angle or Rabi frequency, nonpositive drive frequency).
void validate_pulse(const ChainParameters& params, const PulseSpec& pulse);

// Labeled half-open pulse range [begin, end).
struct Segment {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// An ordered pulse sequence played back-to-back: start_times[i] is the
// cumulative start of pulse i, with start_times[0] = 0 and no gaps.
struct PulseProgram {
  std::vector<PulseSpec> pulses;
  std::vector<double> start_times;
  std::vector<Segment> segments;
  double total_duration = 0.0;

  std::size_t size() const { return pulses.size(); }

  void append(const PulseSpec& pulse) {
    start_times.push_back(total_duration);
    total_duration += pulse.duration();
    pulses.push_back(pulse);
  }

  // Appends all pulses under one segment label.
  void append_segment(const std::string& label, const std::vector<PulseSpec>& block) {
    const std::size_t begin = pulses.size();
    for (const PulseSpec& pulse : block) append(pulse);
    segments.push_back({label, begin, pulses.size()});
  }

  // Common Rabi frequency, or nullopt for an empty or mixed-rate program.
  std::optional<double> uniform_rabi() const;
};

// Duration of one pi/2 pulse at Rabi frequency rabi; the time unit used for
// reporting throughout.
double tau_half_pi(double rabi);

// Program duration expressed in pi/2-pulse units. Requires a uniform Rabi
// frequency.
double duration_in_half_pi_units(const PulseProgram& program);

// Line-oriented text form: a header with the chain parameters and segment
// map, then one pulse per line as "pulse k mu nu phi theta rabi t_start".
// Doubles are written with 17 significant digits so the round trip is
// bit-exact.
std::string serialize_program(const PulseProgram& program, const ChainParameters& params);
void write_program(std::ostream& out, const PulseProgram& program,
                   const ChainParameters& params);

struct ParsedProgram {
  PulseProgram program;
  ChainParameters params;
};

ParsedProgram parse_program(std::istream& in);
ParsedProgram parse_program(const std::string& text);

}  // namespace spinchain
