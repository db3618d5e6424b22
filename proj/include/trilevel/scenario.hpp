#pragma once

// Scenario files: INI-style key/value text with sections
//   [atom] [pulse_s] [pulse_p] [time] [integrator] [medium]
// '#' starts a comment. Unknown sections or keys are rejected, as are
// duplicate keys; every field is either required or has a documented
// default that ends up echoed into emitted metadata.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "trilevel/ode.hpp"
#include "trilevel/pulses.hpp"
#include "trilevel/theorem.hpp"

namespace trilevel {

enum class RunMode { Analytic, Numeric, Both, Theorem };

inline const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Analytic: return "analytic";
    case RunMode::Numeric: return "numeric";
    case RunMode::Both: return "both";
    case RunMode::Theorem: return "theorem";
  }
  return "?";
}

inline const char* to_string(Scheme s) {
  return s == Scheme::V ? "v" : "lambda";
}

inline const char* to_string(CarrierMode m) {
  return m == CarrierMode::RealCosine ? "real_cosine" : "rwa_exponential";
}

struct Scenario {
  RunMode mode = RunMode::Both;
  AtomSpec atom;
  PulseSpec pulse_s;
  PulseSpec pulse_p;
  double t_start = 0.0;
  double t_end = 0.0;
  int n_outputs = 2000;
  IntegratorConfig integrator;
  std::optional<MediumSpec> medium;
  // Launch seeds for self-consistent runs: theta(t_start) = 0,
  // dtheta/dt(t_start) = seed.
  double seed_dtheta_s = 0.1;
  double seed_dtheta_p = 0.0;
};

namespace detail {

struct RawValue {
  std::string text;
  int line = 0;
  mutable bool used = false;
};

using RawSections = std::map<std::string, std::map<std::string, RawValue>>;

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw std::invalid_argument("scenario: line " + std::to_string(line) + ": " +
                              what);
}

inline RawSections tokenize_scenario(std::string_view text) {
  static constexpr const char* known_sections[] = {
      "atom", "pulse_s", "pulse_p", "time", "integrator", "medium"};
  RawSections sections;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line{raw};
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      std::string name{trim(line.substr(1, line.size() - 2))};
      bool known = false;
      for (const char* s : known_sections) known |= (name == s);
      if (!known) parse_fail(line_no, "unknown section [" + name + "]");
      current = name;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      parse_fail(line_no, "expected key = value");
    if (current.empty()) parse_fail(line_no, "key outside any [section]");
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) parse_fail(line_no, "empty key");
    if (value.empty()) parse_fail(line_no, "empty value for key " + key);
    auto [it, inserted] =
        sections[current].emplace(key, RawValue{value, line_no});
    if (!inserted)
      parse_fail(line_no, "duplicate key " + current + "." + key);
  }
  return sections;
}

inline double parse_double(const RawValue& v, const std::string& field) {
  const char* begin = v.text.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end != begin + v.text.size())
    parse_fail(v.line, field + ": not a number: '" + v.text + "'");
  return x;
}

inline int parse_int(const RawValue& v, const std::string& field) {
  const double x = parse_double(v, field);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    parse_fail(v.line, field + ": not an integer: '" + v.text + "'");
  return i;
}

class SectionReader {
 public:
  SectionReader(const RawSections& sections, std::string name)
      : name_(std::move(name)) {
    auto it = sections.find(name_);
    if (it != sections.end()) map_ = &it->second;
  }

  bool present() const { return map_ != nullptr; }

  const RawValue* find(const std::string& key) const {
    if (!map_) return nullptr;
    auto it = map_->find(key);
    if (it == map_->end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const RawValue& require(const std::string& key) const {
    const RawValue* v = find(key);
    if (!v)
      throw std::invalid_argument("scenario: missing required field " + name_ +
                                  "." + key);
    return *v;
  }

  double number(const std::string& key) const {
    return parse_double(require(key), name_ + "." + key);
  }
  double number_or(const std::string& key, double dflt) const {
    const RawValue* v = find(key);
    return v ? parse_double(*v, name_ + "." + key) : dflt;
  }
  std::optional<double> number_opt(const std::string& key) const {
    const RawValue* v = find(key);
    if (!v) return std::nullopt;
    return parse_double(*v, name_ + "." + key);
  }
  int integer_or(const std::string& key, int dflt) const {
    const RawValue* v = find(key);
    return v ? parse_int(*v, name_ + "." + key) : dflt;
  }
  std::string text(const std::string& key) const {
    return require(key).text;
  }

 private:
  std::string name_;
  const std::map<std::string, RawValue>* map_ = nullptr;
};

inline void reject_unused(const RawSections& sections) {
  for (const auto& [sec, kv] : sections)
    for (const auto& [key, v] : kv)
      if (!v.used)
        parse_fail(v.line, "unknown key " + sec + "." + key);
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline PulseSpec read_pulse(const SectionReader& sec, const std::string& name) {
  PulseSpec p;
  p.peak_rabi = sec.number("peak_rabi");
  p.carrier_freq = sec.number("carrier_freq");
  p.envelope = EnvelopeSpec::tanh_family(sec.number("q"), sec.number("tau_p"));
  const RawValue& mode = sec.require("carrier_mode");
  const std::string m = lower(mode.text);
  if (m == "real_cosine")
    p.carrier_mode = CarrierMode::RealCosine;
  else if (m == "rwa_exponential")
    p.carrier_mode = CarrierMode::RwaExponential;
  else
    parse_fail(mode.line, name +
                              ".carrier_mode: expected real_cosine or "
                              "rwa_exponential");
  return p;
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view text,
                               RunMode mode = RunMode::Both) {
  const auto sections = detail::tokenize_scenario(text);
  Scenario s;
  s.mode = mode;

  const detail::SectionReader atom(sections, "atom");
  const detail::RawValue& scheme = atom.require("scheme");
  const std::string scheme_name = detail::lower(scheme.text);
  if (scheme_name == "v")
    s.atom.scheme = Scheme::V;
  else if (scheme_name == "lambda")
    s.atom.scheme = Scheme::Lambda;
  else
    detail::parse_fail(scheme.line, "atom.scheme: expected v or lambda");
  s.atom.omega_ab = atom.number("omega_ab");
  s.atom.omega_cb = atom.number("omega_cb");
  const auto ga = atom.number_opt("gamma_a");
  const auto gb = atom.number_opt("gamma_b");
  const auto gc = atom.number_opt("gamma_c");
  if (ga || gb || gc)
    s.atom.decay = {{ga.value_or(0.0), gb.value_or(0.0), gc.value_or(0.0)}};

  const bool theorem = mode == RunMode::Theorem;
  const detail::SectionReader ps(sections, "pulse_s");
  const detail::SectionReader pp(sections, "pulse_p");
  if (!theorem || ps.present())
    s.pulse_s = detail::read_pulse(ps, "pulse_s");
  if (!theorem || pp.present())
    s.pulse_p = detail::read_pulse(pp, "pulse_p");

  const double tau_max =
      std::max(std::get<TanhEnvelope>(s.pulse_s.envelope.kind).tau_p,
               std::get<TanhEnvelope>(s.pulse_p.envelope.kind).tau_p);
  const double default_t0 = theorem ? 0.0 : -1.5 * tau_max;
  const double default_t1 = theorem ? 50.0 : 1.5 * tau_max;
  const detail::SectionReader time(sections, "time");
  s.t_start = time.number_or("t_start", default_t0);
  s.t_end = time.number_or("t_end", default_t1);
  s.n_outputs = time.integer_or("n_outputs", 2000);

  const detail::SectionReader integ(sections, "integrator");
  s.integrator.rel_tol = integ.number_or("rel_tol", 1e-10);
  s.integrator.abs_tol = integ.number_or("abs_tol", 1e-10);

  const detail::SectionReader medium(sections, "medium");
  if (medium.present()) {
    MediumSpec m;
    m.omega_a_coll = medium.number("omega_a_coll");
    m.omega_c_coll = medium.number("omega_c_coll");
    s.seed_dtheta_s = medium.number_or("seed_dtheta_s", 0.1);
    s.seed_dtheta_p = medium.number_or("seed_dtheta_p", 0.0);
    s.medium = m;
  }

  detail::reject_unused(sections);

  s.atom.validate();
  s.pulse_s.validate();
  s.pulse_p.validate();
  s.integrator.validate();
  if (!(s.t_end > s.t_start))
    throw std::invalid_argument("scenario: time.t_end must be > time.t_start");
  if (s.n_outputs < 2)
    throw std::invalid_argument("scenario: time.n_outputs must be >= 2");
  if (s.medium) s.medium->validate();
  if (theorem && !s.medium)
    throw std::invalid_argument(
        "scenario: theorem mode requires a [medium] section");
  if (s.atom.decay && mode != RunMode::Numeric)
    throw std::invalid_argument(
        "scenario: decay rates require numeric mode (the analytic solution "
        "has no decay)");
  return s;
}

}  // namespace trilevel
