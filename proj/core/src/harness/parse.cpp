#include "asgld/harness/parse.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "asgld/errors.hpp"
#include "asgld/harness/presets.hpp"

namespace asgld::harness {

std::string format_double_short(double v) {
  char buf[64];
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) {
      if (best.empty() || std::string(buf).size() < best.size()) best = buf;
      if (prec >= 6) break;  // longer precisions cannot shorten the string
    }
  }
  if (!best.empty()) return best;
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("spec line " + std::to_string(line) + ": " + what);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

/// Key-value bag for one section, with unknown-key reporting.
class Section {
 public:
  Section(std::string name, int line) : name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }

  void add(const std::string& key, const std::string& value, int line) {
    if (entries_.count(key) != 0) fail(line, "duplicate key '" + key + "' in [" + name_ + "]");
    entries_[key] = Entry{value, line};
  }

  const Entry* take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void finish() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) fail(entry.line, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

  void require(const std::string& key, const std::string& context) const {
    if (entries_.count(key) == 0) fail(line_, context + " requires key '" + key + "'");
  }

  void forbid(const std::string& key, const std::string& why) const {
    auto it = entries_.find(key);
    if (it != entries_.end()) fail(it->second.line, why);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

 private:
  std::string name_;
  int line_;
  std::map<std::string, Entry> entries_;
};

double parse_double_token(const std::string& tok, int line, const std::string& key) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size() || tok.empty()) fail(line, "key '" + key + "': '" + tok + "' is not a number");
  return v;
}

double take_double(Section& s, const std::string& key, double fallback) {
  const Entry* e = s.take(key);
  return e == nullptr ? fallback : parse_double_token(e->value, e->line, key);
}

long take_long(Section& s, const std::string& key, long fallback) {
  const Entry* e = s.take(key);
  if (e == nullptr) return fallback;
  const double v = parse_double_token(e->value, e->line, key);
  const long n = static_cast<long>(v);
  if (static_cast<double>(n) != v) fail(e->line, "key '" + key + "': expected an integer");
  return n;
}

bool take_bool(Section& s, const std::string& key, bool fallback) {
  const Entry* e = s.take(key);
  if (e == nullptr) return fallback;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  fail(e->line, "key '" + key + "': expected true or false");
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

ProblemSpec parse_problem(Section& s) {
  ProblemSpec p;
  const Entry* kind = s.take("kind");
  if (kind == nullptr) fail(s.line(), "[problem] requires key 'kind'");
  const auto k = problem_kind_from_name(kind->value);
  if (!k) fail(kind->line, "unknown problem kind '" + kind->value + "'");
  p.kind = *k;
  p.dataset_seed = static_cast<std::uint64_t>(take_long(s, "dataset_seed", 1));

  const auto only_for = [&](const std::string& key, bool allowed) {
    if (!allowed) {
      s.forbid(key, "key '" + key + "' is not valid for problem kind '" + std::string(problem_kind_name(p.kind)) + "'");
    }
  };
  const bool mle = p.kind == ProblemKind::GaussianMle;
  const bool bowl = p.kind == ProblemKind::QuadraticBowl;
  const bool saddle = p.kind == ProblemKind::QuadraticSaddle;

  only_for("n", mle);
  only_for("floor", mle);
  only_for("dim", bowl || saddle);
  only_for("dims", saddle);
  only_for("noise_std", bowl || saddle);
  only_for("rotate", bowl || saddle);
  only_for("gamma", saddle);
  only_for("positive_eig", saddle);
  only_for("eig_decay", saddle);
  only_for("eig_min", bowl);
  only_for("eig_max", bowl);
  only_for("start_radius", bowl);

  if (mle) {
    p.n = take_long(s, "n", 10000);
    p.floor = take_double(s, "floor", 1e-6);
  }
  if (bowl || saddle) {
    p.noise_std = take_double(s, "noise_std", 1.0);
    p.rotate = take_bool(s, "rotate", false);
    if (const Entry* e = s.take("dims")) {
      p.dims.clear();
      for (const auto& tok : split_tokens(e->value)) {
        p.dims.push_back(static_cast<int>(parse_double_token(tok, e->line, "dims")));
      }
      if (p.dims.empty()) fail(e->line, "key 'dims': expected at least one dimension");
      if (s.has("dim")) fail(e->line, "give either 'dim' or 'dims', not both");
    } else {
      p.dims = {static_cast<int>(take_long(s, "dim", 2))};
    }
  }
  if (saddle) {
    p.gamma = take_double(s, "gamma", 1.0);
    p.positive_eig = take_double(s, "positive_eig", 1.0);
    p.eig_decay = take_double(s, "eig_decay", 0.0);
  }
  if (bowl) {
    p.eig_min = take_double(s, "eig_min", 0.1);
    p.eig_max = take_double(s, "eig_max", 1.0);
    p.start_radius = take_double(s, "start_radius", 3.0);
  }
  s.finish();
  return p;
}

RunSection parse_run(Section& s, std::string* preset_name) {
  RunSection r;
  s.require("budget", "[run]");
  r.budget = take_long(s, "budget", 0);
  const Entry* seeds = s.take("seeds");
  if (seeds == nullptr) fail(s.line(), "[run] requires key 'seeds'");
  for (const auto& tok : split_tokens(seeds->value)) {
    const double v = parse_double_token(tok, seeds->line, "seeds");
    if (v < 0 || static_cast<double>(static_cast<std::uint64_t>(v)) != v) {
      fail(seeds->line, "key 'seeds': expected non-negative integers");
    }
    r.seeds.push_back(static_cast<std::uint64_t>(v));
  }
  r.metric_every = static_cast<int>(take_long(s, "metric_every", 1));
  r.record_precond = take_bool(s, "record_precond", false);
  if (const Entry* e = s.take("out")) r.out = e->value;
  if (const Entry* e = s.take("x0")) {
    Vec x0;
    for (const auto& tok : split_tokens(e->value)) x0.push_back(parse_double_token(tok, e->line, "x0"));
    r.x0 = std::move(x0);
  }
  if (const Entry* e = s.take("escape_delta")) {
    r.escape_delta = parse_double_token(e->value, e->line, "escape_delta");
  }
  r.rate_window = take_double(s, "rate_window", 0.5);
  if (const Entry* e = s.take("preset")) *preset_name = e->value;
  s.finish();
  return r;
}

BatchSchedule parse_batch(const Entry& e) {
  const auto toks = split_tokens(e.value);
  if (toks.empty()) fail(e.line, "key 'batch': expected 'constant B', 'powerlaw c theta' or 'linear c'");
  BatchSchedule b;
  if (toks[0] == "constant" && toks.size() == 2) {
    b = BatchSchedule::constant(static_cast<long>(parse_double_token(toks[1], e.line, "batch")));
  } else if (toks[0] == "powerlaw" && toks.size() == 3) {
    b = BatchSchedule::power_law(parse_double_token(toks[1], e.line, "batch"),
                                 parse_double_token(toks[2], e.line, "batch"));
  } else if (toks[0] == "linear" && toks.size() == 2) {
    b = BatchSchedule::linear(parse_double_token(toks[1], e.line, "batch"));
  } else {
    fail(e.line, "key 'batch': expected 'constant B', 'powerlaw c theta' or 'linear c'");
  }
  return b;
}

MethodConfig parse_method(Section& s, const std::string& label) {
  const Entry* method = s.take("method");
  if (method == nullptr) fail(s.line(), "[method " + label + "] requires key 'method'");
  const auto m = method_from_name(method->value);
  if (!m) fail(method->line, "unknown method kind '" + method->value + "'");

  MethodConfig c;
  c.method = *m;
  const std::string ctx = "[method " + label + "]: method \"" + method->value + "\"";
  const bool adaptive = *m == Method::Asgld || *m == Method::Agld || *m == Method::Asg;
  const bool langevin = *m == Method::Asgld || *m == Method::Agld;

  if (adaptive) {
    s.require("alpha", ctx);
  } else {
    s.forbid("alpha", ctx + " fixes alpha = 0; remove the key");
  }
  c.alpha = adaptive ? take_double(s, "alpha", 1.0) : 0.0;

  if (langevin) {
    s.require("beta", ctx);
    c.beta = take_double(s, "beta", 1.0);
  } else {
    s.forbid("beta", *m == Method::Sgld ? ctx + " fixes beta = 0; remove the key"
                                        : ctx + " has no noise term; remove the key");
    c.beta.reset();
  }

  c.eta = take_double(s, "eta", 0.01);
  c.delta = take_double(s, "delta", 0.1);

  const bool has_noise = langevin || *m == Method::Sgld;
  if (!has_noise) s.forbid("sigma2", ctx + " has no noise term; remove the key");
  c.sigma2 = has_noise ? take_double(s, "sigma2", 1.0) : 1.0;

  if (*m != Method::Sgld) s.forbid("u", ctx + ": temperature u applies to SGLD only");
  c.temperature_u = *m == Method::Sgld ? take_double(s, "u", 1.0) : 1.0;

  if (*m == Method::Agld) {
    s.forbid("batch", ctx + " evaluates the full gradient; remove the key");
  } else if (const Entry* e = s.take("batch")) {
    c.batch = parse_batch(*e);
  }

  if (const Entry* e = s.take("step_decay")) {
    if (e->value == "none") {
      c.decay = StepDecay::None;
    } else if (e->value == "inverse_t") {
      c.decay = StepDecay::InverseT;
    } else {
      fail(e->line, "key 'step_decay': expected none or inverse_t");
    }
  }
  s.finish();
  try {
    c.validate();
  } catch (const ConfigError& e) {
    fail(s.line(), "[method " + label + "]: " + e.what());
  }
  return c;
}

}  // namespace

ExperimentSpec parse_spec(const std::string& text) {
  std::vector<Section> sections;
  std::vector<std::string> method_labels;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int current = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string header = trim(line.substr(1, line.size() - 2));
      if (header == "problem" || header == "run") {
        for (const auto& s : sections) {
          if (s.name() == header) fail(line_no, "duplicate [" + header + "] section");
        }
        sections.emplace_back(header, line_no);
      } else if (header.rfind("method", 0) == 0) {
        const std::string label = trim(header.substr(6));
        if (label.empty()) fail(line_no, "[method] needs a label: [method NAME]");
        sections.emplace_back("method " + label, line_no);
        method_labels.push_back(label);
      } else {
        fail(line_no, "unknown section [" + header + "]");
      }
      current = static_cast<int>(sections.size()) - 1;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    if (current < 0) fail(line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    sections[static_cast<std::size_t>(current)].add(key, value, line_no);
  }

  ExperimentSpec spec;
  bool saw_problem = false, saw_run = false;
  std::string preset_name;
  std::size_t method_idx = 0;
  std::vector<LabeledMethod> own_methods;
  for (auto& s : sections) {
    if (s.name() == "problem") {
      spec.problem = parse_problem(s);
      saw_problem = true;
    } else if (s.name() == "run") {
      spec.run = parse_run(s, &preset_name);
      saw_run = true;
    } else {
      const std::string& label = method_labels[method_idx++];
      own_methods.push_back(LabeledMethod{label, parse_method(s, label)});
    }
  }
  if (!saw_problem) throw ParseError("spec: missing [problem] section");
  if (!saw_run) throw ParseError("spec: missing [run] section");

  if (!preset_name.empty()) {
    const ExperimentSpec fragment = preset(preset_name);
    spec.methods = fragment.methods;
  }
  for (auto& m : own_methods) spec.methods.push_back(std::move(m));

  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace {

void serialize_batch(std::ostream& out, const BatchSchedule& b) {
  switch (b.kind) {
    case BatchSchedule::Kind::Constant:
      out << "batch = constant " << format_double_short(b.c) << "\n";
      break;
    case BatchSchedule::Kind::PowerLaw:
      out << "batch = powerlaw " << format_double_short(b.c) << " " << format_double_short(b.theta) << "\n";
      break;
    case BatchSchedule::Kind::Linear:
      out << "batch = linear " << format_double_short(b.c) << "\n";
      break;
  }
}

}  // namespace

std::string serialize_spec(const ExperimentSpec& spec) {
  std::ostringstream out;
  const ProblemSpec& p = spec.problem;
  out << "[problem]\n";
  out << "kind = " << problem_kind_name(p.kind) << "\n";
  out << "dataset_seed = " << p.dataset_seed << "\n";
  const bool mle = p.kind == ProblemKind::GaussianMle;
  const bool bowl = p.kind == ProblemKind::QuadraticBowl;
  const bool saddle = p.kind == ProblemKind::QuadraticSaddle;
  if (mle) {
    out << "n = " << p.n << "\n";
    out << "floor = " << format_double_short(p.floor) << "\n";
  }
  if (bowl || saddle) {
    if (p.dims.size() == 1) {
      out << "dim = " << p.dims[0] << "\n";
    } else {
      out << "dims =";
      for (const int d : p.dims) out << " " << d;
      out << "\n";
    }
    out << "noise_std = " << format_double_short(p.noise_std) << "\n";
    out << "rotate = " << (p.rotate ? "true" : "false") << "\n";
  }
  if (saddle) {
    out << "gamma = " << format_double_short(p.gamma) << "\n";
    out << "positive_eig = " << format_double_short(p.positive_eig) << "\n";
    out << "eig_decay = " << format_double_short(p.eig_decay) << "\n";
  }
  if (bowl) {
    out << "eig_min = " << format_double_short(p.eig_min) << "\n";
    out << "eig_max = " << format_double_short(p.eig_max) << "\n";
    out << "start_radius = " << format_double_short(p.start_radius) << "\n";
  }

  const RunSection& r = spec.run;
  out << "\n[run]\n";
  out << "budget = " << r.budget << "\n";
  out << "seeds =";
  for (const auto s : r.seeds) out << " " << s;
  out << "\n";
  out << "metric_every = " << r.metric_every << "\n";
  out << "record_precond = " << (r.record_precond ? "true" : "false") << "\n";
  if (!r.out.empty()) out << "out = " << r.out << "\n";
  if (r.x0) {
    out << "x0 =";
    for (const double v : *r.x0) out << " " << format_double_short(v);
    out << "\n";
  }
  if (r.escape_delta) out << "escape_delta = " << format_double_short(*r.escape_delta) << "\n";
  out << "rate_window = " << format_double_short(r.rate_window) << "\n";

  for (const auto& m : spec.methods) {
    const MethodConfig& c = m.config;
    out << "\n[method " << m.label << "]\n";
    out << "method = " << method_name(c.method) << "\n";
    out << "eta = " << format_double_short(c.eta) << "\n";
    const bool adaptive = c.method == Method::Asgld || c.method == Method::Agld || c.method == Method::Asg;
    const bool langevin = c.method == Method::Asgld || c.method == Method::Agld;
    if (adaptive) out << "alpha = " << format_double_short(c.alpha) << "\n";
    if (langevin) out << "beta = " << format_double_short(*c.beta) << "\n";
    out << "delta = " << format_double_short(c.delta) << "\n";
    if (langevin || c.method == Method::Sgld) out << "sigma2 = " << format_double_short(c.sigma2) << "\n";
    if (c.method == Method::Sgld) out << "u = " << format_double_short(c.temperature_u) << "\n";
    if (c.method != Method::Agld) serialize_batch(out, c.batch);
    if (c.decay == StepDecay::InverseT) out << "step_decay = inverse_t\n";
  }
  return out.str();
}

}  // namespace asgld::harness
