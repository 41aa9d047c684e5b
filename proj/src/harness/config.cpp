#include "fraclyap/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fraclyap/errors.hpp"
#include "fraclyap/format.hpp"

namespace fraclyap::harness {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, std::vector<Entry>> keys;
};

struct KeySpec {
  const char* name;
  bool repeatable;
};

const std::map<std::string, std::vector<KeySpec>>& grammar() {
  static const std::map<std::string, std::vector<KeySpec>> g = {
      {"scenario",
       {{"name", false}, {"alpha", false}, {"horizon", false}, {"steps", false}, {"seed", false},
        {"output_dir", false}, {"samples", false}, {"derivative", false}}},
      {"field", {{"dim", false}, {"term", true}, {"matrix", false}}},
      {"initial", {{"point", true}}},
      {"lyapunov", {{"kind", false}, {"matrix", false}, {"exponents", false}, {"weights", false}}},
      {"constants",
       {{"C1", false}, {"C2", false}, {"C3", false}, {"a", false}, {"b", false}, {"c", false},
        {"r", false}}},
      {"probe", {{"eps", false}, {"points", false}, {"K", false}}},
  };
  return g;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::string section_name;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("unterminated section header", line_no);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!grammar().count(name)) throw ValidationError("unknown section [" + name + "]", line_no);
      if (sections.count(name)) throw ValidationError("section [" + name + "] appears twice", line_no);
      current = &sections[name];
      section_name = name;
      current->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError("expected 'key = value'", line_no);
    if (!current) throw ValidationError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));

    const auto& specs = grammar().at(section_name);
    const auto spec = std::find_if(specs.begin(), specs.end(), [&](const KeySpec& k) { return key == k.name; });
    if (spec == specs.end()) {
      throw ValidationError("unknown key '" + key + "' in [" + section_name + "]", line_no);
    }
    if (value.empty()) throw ValidationError("key '" + key + "' has no value", line_no);
    auto& entries = current->keys[key];
    if (!entries.empty() && !spec->repeatable) {
      throw ValidationError("key '" + key + "' repeated (first on line " +
                                std::to_string(entries.front().line) + ")",
                            line_no);
    }
    entries.push_back({value, line_no});
  }
  return sections;
}

double parse_real(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ValidationError(key + ": '" + e.value + "' is not a finite number", e.line);
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, const std::string& key, std::size_t line) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError(key + ": '" + std::string(text) + "' is not a non-negative integer", line);
  }
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t,", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t,", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::vector<double> parse_reals(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (auto w : words(e.value)) out.push_back(parse_real({std::string(w), e.line}, key));
  return out;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }
  std::size_t section_line(const std::string& s) const {
    return has_section(s) ? sections_.at(s).line : 0;
  }

  const std::vector<Entry>* all(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.keys.find(key);
    return k == s->second.keys.end() ? nullptr : &k->second;
  }
  const Entry* find(const std::string& section, const std::string& key) const {
    const auto* e = all(section, key);
    return e ? &e->front() : nullptr;
  }
  const Entry& require(const std::string& section, const std::string& key) const {
    if (const auto* e = find(section, key)) return *e;
    throw ValidationError("missing required key '" + key + "' in [" + section + "]",
                          section_line(section));
  }

 private:
  std::map<std::string, Section> sections_;
};

fdesolve::VectorFieldSpec build_field(const Reader& r) {
  const Entry& dim_entry = r.require("field", "dim");
  const auto dim = parse_unsigned(dim_entry.value, "dim", dim_entry.line);
  if (dim == 0) throw ValidationError("dim must be at least 1", dim_entry.line);
  const auto* terms = r.all("field", "term");
  const auto* matrix = r.find("field", "matrix");
  if (terms && matrix) {
    throw ValidationError("[field] takes either 'term' lines or one 'matrix', not both", matrix->line);
  }
  if (matrix) {
    const auto m = parse_reals(*matrix, "matrix");
    if (m.size() != dim * dim) {
      throw ValidationError("matrix needs " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(m.size()),
                            matrix->line);
    }
    return fdesolve::VectorFieldSpec::linear(dim, m);
  }
  std::vector<fdesolve::Monomial> monomials;
  if (terms) {
    for (const Entry& e : *terms) {
      const auto w = words(e.value);
      if (w.size() != 2 + dim) {
        throw ValidationError("term needs 'target coefficient' and " + std::to_string(dim) +
                                  " exponents, got " + std::to_string(w.size()) + " fields",
                              e.line);
      }
      fdesolve::Monomial m;
      m.target = parse_unsigned(w[0], "term target", e.line);
      if (m.target >= dim) throw ValidationError("term target out of range", e.line);
      m.coefficient = parse_real({std::string(w[1]), e.line}, "term coefficient");
      for (std::size_t i = 0; i < dim; ++i) {
        m.exponents.push_back(static_cast<unsigned>(parse_unsigned(w[2 + i], "term exponent", e.line)));
      }
      if (m.degree() == 0) {
        throw ValidationError("degree-0 monomial would make f(0) != 0", e.line);
      }
      monomials.push_back(std::move(m));
    }
  }
  return {dim, std::move(monomials)};
}

lyapcheck::LyapunovCandidate build_candidate(const Reader& r, std::size_t dim) {
  const Entry& kind = r.require("lyapunov", "kind");
  using lyapcheck::LyapunovCandidate;
  auto wrap = [&](const auto& make, std::size_t line) {
    try {
      return make();
    } catch (const ConstraintError& e) {
      throw ValidationError(e.what(), line);
    }
  };
  if (kind.value == "quadratic") {
    const Entry& m = r.require("lyapunov", "matrix");
    auto values = parse_reals(m, "matrix");
    if (values.size() != dim * dim) {
      throw ValidationError("quadratic matrix needs " + std::to_string(dim * dim) + " entries", m.line);
    }
    return wrap([&] { return LyapunovCandidate::quadratic(dim, values); }, m.line);
  }
  if (kind.value == "even-power-sum") {
    const Entry& e = r.require("lyapunov", "exponents");
    const Entry& w = r.require("lyapunov", "weights");
    std::vector<unsigned> exps;
    for (auto word : words(e.value)) {
      exps.push_back(static_cast<unsigned>(parse_unsigned(word, "exponents", e.line)));
    }
    const auto weights = parse_reals(w, "weights");
    if (exps.size() != dim) throw ValidationError("exponents need one entry per coordinate", e.line);
    if (weights.size() != dim) throw ValidationError("weights need one entry per coordinate", w.line);
    return wrap([&] { return LyapunovCandidate::even_power_sum(exps, weights); }, e.line);
  }
  if (kind.value == "linear") {
    const Entry& w = r.require("lyapunov", "weights");
    const auto weights = parse_reals(w, "weights");
    if (weights.size() != dim) throw ValidationError("weights need one entry per coordinate", w.line);
    return wrap([&] { return LyapunovCandidate::linear(weights); }, w.line);
  }
  throw ValidationError("kind must be quadratic, even-power-sum or linear", kind.line);
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  const Reader r(tokenize(text));
  ScenarioConfig cfg;

  cfg.name = r.require("scenario", "name").value;
  for (char ch : cfg.name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') {
      throw ValidationError("name may only contain letters, digits, '-' and '_'",
                            r.find("scenario", "name")->line);
    }
  }
  const Entry& alpha = r.require("scenario", "alpha");
  const double a = parse_real(alpha, "alpha");
  if (!(a > 0.0 && a < 1.0)) {
    throw ValidationError("alpha must lie strictly between 0 and 1 (got " + alpha.value + ")", alpha.line);
  }
  cfg.alpha = fracops::FractionalOrder(a);

  const Entry& horizon = r.require("scenario", "horizon");
  cfg.horizon = parse_real(horizon, "horizon");
  if (!(cfg.horizon > 0.0)) throw ValidationError("horizon must be positive", horizon.line);

  if (const auto* e = r.find("scenario", "steps")) {
    cfg.steps = parse_unsigned(e->value, "steps", e->line);
    if (cfg.steps == 0) throw ValidationError("steps must be at least 1", e->line);
  } else {
    cfg.defaults_applied.push_back("steps=" + std::to_string(kDefaultSteps));
  }
  if (const auto* e = r.find("scenario", "seed")) {
    cfg.seed = parse_unsigned(e->value, "seed", e->line);
  } else {
    cfg.defaults_applied.push_back("seed=" + std::to_string(kDefaultSeed));
  }
  if (const auto* e = r.find("scenario", "samples")) {
    cfg.samples = parse_unsigned(e->value, "samples", e->line);
    if (cfg.samples < lyapcheck::kMinSamples) {
      throw ValidationError("samples must be at least " + std::to_string(lyapcheck::kMinSamples), e->line);
    }
  } else {
    cfg.defaults_applied.push_back("samples=" + std::to_string(kDefaultSamples));
  }
  if (const auto* e = r.find("scenario", "derivative")) {
    if (e->value == "numeric") {
      cfg.audit_source = lyapcheck::DerivativeSource::kNumeric;
    } else if (e->value == "field") {
      cfg.audit_source = lyapcheck::DerivativeSource::kField;
    } else {
      throw ValidationError("derivative must be 'numeric' or 'field'", e->line);
    }
  }
  if (const auto* e = r.find("scenario", "output_dir")) {
    cfg.output_dir = e->value;
  } else {
    cfg.output_dir = std::filesystem::path("fraclyap-out") / cfg.name;
    cfg.defaults_applied.push_back("output_dir=" + cfg.output_dir.string());
  }

  cfg.field = build_field(r);
  const std::size_t dim = cfg.field.dim();

  const auto* points = r.all("initial", "point");
  if (!points) throw ValidationError("missing required key 'point' in [initial]", r.section_line("initial"));
  for (const Entry& e : *points) {
    auto p = parse_reals(e, "point");
    if (p.size() != dim) {
      throw ValidationError("point needs " + std::to_string(dim) + " coordinates", e.line);
    }
    cfg.initial_points.push_back(std::move(p));
  }

  cfg.lyapunov = build_candidate(r, dim);

  auto constant = [&](const char* key) { return parse_real(r.require("constants", key), key); };
  cfg.constants = {constant("C1"), constant("C2"), constant("C3"), constant("a"),
                   constant("b"),  constant("c"),  constant("r")};
  if (auto problem = cfg.constants.problem()) {
    throw ValidationError("constants: " + *problem, r.section_line("constants"));
  }

  if (r.has_section("probe")) {
    ProbeSettings probe;
    const Entry& eps = r.require("probe", "eps");
    probe.eps = parse_real(eps, "eps");
    if (!(probe.eps > 0.0)) throw ValidationError("eps must be positive", eps.line);
    if (!(probe.eps < cfg.constants.r)) {
      throw ValidationError("eps must be smaller than the ball radius r", eps.line);
    }
    if (const auto* e = r.find("probe", "points")) {
      probe.points = parse_unsigned(e->value, "points", e->line);
      if (probe.points == 0) throw ValidationError("points must be at least 1", e->line);
    }
    if (const auto* e = r.find("probe", "K")) {
      cfg.K = parse_real(*e, "K");
      if (!(cfg.K > 1.0)) throw ValidationError("K must exceed 1", e->line);
    }
    cfg.probe = probe;
  }
  if (!r.find("probe", "K")) cfg.defaults_applied.push_back("K=" + format_double(kDefaultK));
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string builtin_document(std::string_view name) {
  if (name == "example1" || name == "example1-identity") {
    const bool identity = name == "example1-identity";
    std::string doc = "# D^alpha x = -A x with A symmetric positive definite, V(x) = <x, x>.\n";
    doc += identity ? "# A = I decouples the coordinates: x(t) = x0 E_alpha(-t^alpha).\n"
                    : "# A = [[2, 1], [1, 2]], eigenvalues 1 and 3.\n";
    doc += "[scenario]\nname = " + std::string(name) +
           "\nalpha = 0.6\nhorizon = 20\nsteps = 4096\nseed = 0\n\n[field]\ndim = 2\n";
    doc += identity ? "matrix = -1 0 0 -1\n" : "matrix = -2 -1 -1 -2\n";
    doc +=
        "\n[initial]\npoint = 0.8 -0.5\npoint = 0.3 0.6\npoint = -0.7 -0.2\n\n"
        "[lyapunov]\nkind = quadratic\nmatrix = 1 0 0 1\n\n"
        "# <grad V, -A x> = -2 x^T A x <= -2 lambda_min(A) |x|^2\n"
        "[constants]\nC1 = 1\nC2 = 1\nC3 = 2\na = 2\nb = 2\nc = 2\nr = 1\n\n"
        "[probe]\neps = 0.5\npoints = 8\nK = 2\n";
    return doc;
  }
  if (name == "example2") {
    return "# D^alpha x = -x^3, V(x) = x^2.\n"
           "[scenario]\nname = example2\nalpha = 0.8\nhorizon = 1000\nsteps = 16384\nseed = 0\n\n"
           "[field]\ndim = 1\nterm = 0 -1 3\n\n"
           "[initial]\npoint = 1\npoint = 0.6\npoint = -0.8\n\n"
           "[lyapunov]\nkind = quadratic\nmatrix = 1\n\n"
           "[constants]\nC1 = 1\nC2 = 1\nC3 = 2\na = 2\nb = 2\nc = 4\nr = 1\n\n"
           "[probe]\neps = 0.1\npoints = 2\nK = 2\n";
  }
  throw ValidationError("unknown built-in scenario '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"example1", "example1-identity", "example2"}; }

std::string describe_field(const fdesolve::VectorFieldSpec& f) {
  std::vector<std::string> rows(f.dim());
  for (const auto& m : f.terms()) {
    std::string term = format_double(m.coefficient);
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] == 0) continue;
      term += " x_" + std::to_string(i);
      if (m.exponents[i] > 1) term += "^" + std::to_string(m.exponents[i]);
    }
    rows[m.target] += (rows[m.target].empty() ? "" : " + ") + term;
  }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += (i ? "; " : "") + std::string("f_") + std::to_string(i) + " = " + (rows[i].empty() ? "0" : rows[i]);
  }
  return out;
}

}  // namespace fraclyap::harness
