#include "spinchain/pulse.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace spinchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + " value '" + token + "'");
  }
  if (used != token.size()) {
    throw std::invalid_argument("bad " + what + " value '" + token + "'");
  }
  return value;
}

}  // namespace

void validate_pulse(const ChainParameters& params, const PulseSpec& pulse) {
  if (!(pulse.angle > 0.0)) throw std::invalid_argument("pulse angle must be positive");
  if (!(pulse.rabi > 0.0)) throw std::invalid_argument("Rabi frequency must be positive");
  if (!offsets_realizable(params, pulse.k, pulse.mu, pulse.nu)) {
    throw UnrealizableOffsets("offsets (mu=" + std::to_string(pulse.mu) +
                              ", nu=" + std::to_string(pulse.nu) +
                              ") are not realizable on qubit " + std::to_string(pulse.k));
  }
  if (!(drive_frequency(params, pulse.k, pulse.mu, pulse.nu) > 0.0)) {
    throw std::invalid_argument("drive frequency must be positive");
  }
}

std::optional<double> PulseProgram::uniform_rabi() const {
  if (pulses.empty()) return std::nullopt;
  const double rabi = pulses.front().rabi;
  for (const PulseSpec& pulse : pulses) {
    if (pulse.rabi != rabi) return std::nullopt;
  }
  return rabi;
}

double tau_half_pi(double rabi) { return kPi / (2.0 * rabi); }

double duration_in_half_pi_units(const PulseProgram& program) {
  if (program.pulses.empty()) return 0.0;
  const auto rabi = program.uniform_rabi();
  if (!rabi) {
    throw std::invalid_argument("program mixes Rabi frequencies; no common pi/2 unit");
  }
  return program.total_duration / tau_half_pi(*rabi);
}

void write_program(std::ostream& out, const PulseProgram& program,
                   const ChainParameters& params) {
  out << "# spinchain pulse program\n";
  out << "version 1\n";
  out << "n " << params.n << "\n";
  for (int k = 0; k < params.n; ++k) {
    out << "w" << k << " " << fmt(params.larmor[k]) << "\n";
  }
  out << "J " << fmt(params.coupling_j) << "\n";
  out << "J2 " << fmt(params.coupling_j2) << "\n";
  for (const Segment& segment : program.segments) {
    out << "segment " << segment.label << " " << segment.begin << " " << segment.end << "\n";
  }
  for (std::size_t i = 0; i < program.pulses.size(); ++i) {
    const PulseSpec& p = program.pulses[i];
    out << "pulse " << p.k << " " << p.mu << " " << p.nu << " " << fmt(p.phase) << " "
        << fmt(p.angle) << " " << fmt(p.rabi) << " " << fmt(program.start_times[i]) << "\n";
  }
}

std::string serialize_program(const PulseProgram& program, const ChainParameters& params) {
  std::ostringstream out;
  write_program(out, program, params);
  return out.str();
}

ParsedProgram parse_program(std::istream& in) {
  ParsedProgram result;
  result.params.larmor.clear();
  bool seen_version = false;
  int expected_larmor = -1;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;

    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("program line " + std::to_string(line_no) + ": " + why);
    };

    if (tag == "version") {
      int version = 0;
      if (!(fields >> version) || version != 1) fail("unsupported version");
      seen_version = true;
    } else if (tag == "n") {
      if (!(fields >> result.params.n)) fail("bad qubit count");
      expected_larmor = result.params.n;
    } else if (tag.size() > 1 && tag[0] == 'w') {
      const int k = static_cast<int>(parse_double(tag.substr(1), "Larmor index"));
      if (k != static_cast<int>(result.params.larmor.size())) fail("Larmor lines out of order");
      std::string value;
      if (!(fields >> value)) fail("missing Larmor value");
      result.params.larmor.push_back(parse_double(value, "Larmor frequency"));
    } else if (tag == "J") {
      std::string value;
      if (!(fields >> value)) fail("missing J value");
      result.params.coupling_j = parse_double(value, "J");
    } else if (tag == "J2") {
      std::string value;
      if (!(fields >> value)) fail("missing J2 value");
      result.params.coupling_j2 = parse_double(value, "J2");
    } else if (tag == "segment") {
      Segment segment;
      if (!(fields >> segment.label >> segment.begin >> segment.end)) fail("bad segment line");
      result.program.segments.push_back(segment);
    } else if (tag == "pulse") {
      PulseSpec pulse;
      std::string phase, angle, rabi, start;
      if (!(fields >> pulse.k >> pulse.mu >> pulse.nu >> phase >> angle >> rabi >> start)) {
        fail("bad pulse line");
      }
      pulse.phase = parse_double(phase, "phase");
      pulse.angle = parse_double(angle, "angle");
      pulse.rabi = parse_double(rabi, "rabi");
      const double t_start = parse_double(start, "start time");
      if (t_start != result.program.total_duration) {
        fail("start time does not match the cumulative pulse durations");
      }
      result.program.append(pulse);
    } else {
      fail("unknown directive '" + tag + "'");
    }
  }

  if (!seen_version) throw std::invalid_argument("program header missing version line");
  if (expected_larmor != static_cast<int>(result.params.larmor.size())) {
    throw std::invalid_argument("program header has wrong number of Larmor lines");
  }
  for (const Segment& segment : result.program.segments) {
    if (segment.begin > segment.end || segment.end > result.program.size()) {
      throw std::invalid_argument("segment '" + segment.label + "' out of range");
    }
  }
  return result;
}

ParsedProgram parse_program(const std::string& text) {
  std::istringstream in(text);
  return parse_program(in);
}

}  // namespace spinchain
