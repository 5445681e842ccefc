#include "spinchain/config.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "spinchain/experiments.hpp"

namespace spinchain {

namespace {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<KeyValue> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<KeyValue> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    }
    entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
  }
  return entries;
}

double to_double(const KeyValue& kv) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(kv.value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != kv.value.size()) {
    throw std::invalid_argument("config line " + std::to_string(kv.line) + ": bad number '" +
                                kv.value + "' for key " + kv.key);
  }
  return value;
}

long to_long(const KeyValue& kv) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(kv.value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != kv.value.size()) {
    throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                ": bad integer '" + kv.value + "' for key " + kv.key);
  }
  return value;
}

// Applies one entry; returns false if the key is not a chain key.
bool apply_chain_key(ChainParameters& chain, const KeyValue& kv) {
  if (kv.key == "n") {
    const long n = to_long(kv);
    if (n < 1 || n > 20) {
      throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                  ": unreasonable qubit count " + kv.value);
    }
    chain.n = static_cast<int>(n);
    chain.larmor.assign(chain.n, 0.0);
    return true;
  }
  if (kv.key.size() >= 2 && kv.key[0] == 'w') {
    int index = -1;
    try {
      std::size_t used = 0;
      index = std::stoi(kv.key.substr(1), &used);
      if (used != kv.key.size() - 1) index = -1;
    } catch (const std::exception&) {
      index = -1;
    }
    if (index < 0) return false;
    if (index >= chain.n) {
      throw std::invalid_argument("config line " + std::to_string(kv.line) + ": key " +
                                  kv.key + " exceeds the qubit count n=" +
                                  std::to_string(chain.n));
    }
    chain.larmor[index] = to_double(kv);
    return true;
  }
  if (kv.key == "J") {
    chain.coupling_j = to_double(kv);
    return true;
  }
  if (kv.key == "J2") {
    chain.coupling_j2 = to_double(kv);
    return true;
  }
  return false;
}

}  // namespace

double resolve_rabi(const RunConfig& config) {
  if (config.rabi) return *config.rabi;
  return rabi_for_2pik(2.0 * config.chain.coupling_j2, config.rabi_k);
}

void load_config_file(RunConfig& config, const std::string& path) {
  for (const KeyValue& kv : read_key_values(path)) {
    if (apply_chain_key(config.chain, kv)) continue;
    if (kv.key == "alpha") {
      config.alpha = static_cast<int>(to_long(kv));
    } else if (kv.key == "steps") {
      config.steps = static_cast<int>(to_long(kv));
    } else if (kv.key == "strategy") {
      config.strategy = strategy_from_string(kv.value);
    } else if (kv.key == "mode") {
      config.mode = evolution_mode_from_string(kv.value);
    } else if (kv.key == "rabi") {
      config.rabi = to_double(kv);
    } else if (kv.key == "seed") {
      config.seed = static_cast<std::uint64_t>(to_long(kv));
    } else {
      throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                  ": unknown key '" + kv.key + "'");
    }
  }
}

ChainParameters load_chain_parameters(const std::string& path) {
  ChainParameters chain;
  for (const KeyValue& kv : read_key_values(path)) {
    if (!apply_chain_key(chain, kv)) {
      throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                  ": unknown key '" + kv.key + "'");
    }
  }
  return chain;
}

}  // namespace spinchain
