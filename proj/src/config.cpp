#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "opk/experiment.hpp"
#include "opk/string_algebra.hpp"

namespace opk {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse number '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse integer '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
  return v;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "N") {
      config.n_fermions = static_cast<int>(parse_int(key, value));
    } else if (key == "q") {
      config.interaction_order = static_cast<int>(parse_int(key, value));
    } else if (key == "J") {
      config.coupling_scale = parse_double(key, value);
    } else if (key == "mu_values") {
      config.mu_values.clear();
      for (const auto& tok : split(value, ','))
        config.mu_values.push_back(parse_double(key, tok));
    } else if (key == "t_max") {
      config.t_max = parse_double(key, value);
    } else if (key == "n_times") {
      config.n_times = static_cast<int>(parse_int(key, value));
    } else if (key == "n_realizations") {
      config.n_realizations = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "initial_operator") {
      config.initial_operator = value;
    } else if (key == "bases") {
      config.bases = split(value, ',');
    } else if (key == "outputs") {
      config.outputs = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

OperatorVector parse_initial_operator(const std::string& text, const MajoranaSet& majoranas) {
  double scalar = 1.0;
  std::vector<int> factors;
  for (const auto& token : split(text, '*')) {
    if (token.empty()) throw std::invalid_argument("initial_operator: empty factor");
    if (token.rfind("psi", 0) == 0) {
      const long long k = parse_int("initial_operator", token.substr(3));
      if (k < 1 || k > majoranas.n_fermions())
        throw std::invalid_argument("initial_operator: psi index out of range in '" + token + "'");
      factors.push_back(static_cast<int>(k - 1));
    } else if (token.rfind("sqrt", 0) == 0) {
      const double v = parse_double("initial_operator", token.substr(4));
      if (v < 0.0) throw std::invalid_argument("initial_operator: sqrt of negative value");
      scalar *= std::sqrt(v);
    } else {
      scalar *= parse_double("initial_operator", token);
    }
  }

  const StringTerm term = canonical_product(factors, Complex(scalar, 0.0));
  const int d = majoranas.hilbert_dim();
  Matrix op = Matrix::Identity(d, d);
  for (int idx : term.indices) op = op * majoranas.mode(idx);
  op *= term.coeff;

  OperatorVector x0 = vectorize(op);
  const double norm = operator_norm(x0);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("initial_operator '" + text + "' has norm " +
                                std::to_string(norm) + ", expected 1");
  return x0;
}

}  // namespace opk
