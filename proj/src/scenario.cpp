#include "nambu/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "nambu/errors.hpp"
#include "nambu/exterior.hpp"
#include "nambu/flows.hpp"
#include "nambu/lax.hpp"
#include "nambu/nambu.hpp"
#include "nambu/ring.hpp"
#include "nambu/sampling.hpp"

namespace nambu {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// "lhs : rhs" split at the first colon.
std::pair<std::string, std::string> split_pair(const std::string& value, std::size_t line) {
  const auto colon = value.find(':');
  if (colon == std::string::npos) throw ParseError("expected '<key> : <value>'", line);
  return {trim(value.substr(0, colon)), trim(value.substr(colon + 1))};
}

std::vector<std::string> parse_basis(const std::string& text, std::size_t line) {
  if (text == "1") return {};
  std::vector<std::string> out;
  for (const auto& piece : split(text, '^')) {
    if (piece.size() < 2 || piece.front() != 'd') {
      throw ParseError("basis element '" + piece + "' must look like dx", line);
    }
    out.push_back(piece.substr(1));
  }
  return out;
}

std::string format_basis(const std::vector<std::string>& basis) {
  if (basis.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? "^d" : "d") + basis[i];
  return out;
}

double parse_double(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("malformed number '" + text + "'", line);
  return value;
}

std::size_t parse_count(const std::string& text, std::size_t line) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("malformed integer '" + text + "'", line);
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string scientific(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string content = trim(raw);
    if (content.empty() || content.front() == '#') continue;
    if (!header) {
      auto words = split_words(content);
      if (words.size() != 2 || words[0] != "nambu-scenario") {
        throw ParseError("missing 'nambu-scenario <version>' header", line);
      }
      if (parse_count(words[1], line) != static_cast<std::size_t>(kScenarioVersion)) {
        throw ParseError("unsupported scenario version " + words[1], line);
      }
      header = true;
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError("expected '<key> = <value>'", line);
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));

    if (key == "name") {
      cfg.name = value;
    } else if (key == "variables") {
      cfg.variables = split_words(value);
    } else if (key == "hamiltonian") {
      cfg.hamiltonians.push_back(value);
    } else if (key == "field") {
      cfg.field = split(value, ';');
    } else if (key == "expect_field") {
      cfg.expect_field = split(value, ';');
    } else if (key == "published" || key == "homotopy") {
      auto [basis, coeff] = split_pair(value, line);
      (key == "published" ? cfg.published : cfg.homotopy)
          .push_back({parse_basis(basis, line), coeff});
    } else if (key == "parameter") {
      auto [name, relation] = split_pair(value, line);
      cfg.parameters.push_back({name, relation});
    } else if (key == "lax") {
      cfg.lax.push_back(split(value, ';'));
    } else if (key == "partner") {
      cfg.partner.push_back(split(value, ';'));
    } else if (key == "trace") {
      auto [power, expected] = split_pair(value, line);
      const std::size_t k = parse_count(power, line);
      if (k == 0) throw ParseError("trace power must be >= 1", line);
      cfg.traces.push_back({static_cast<std::uint32_t>(k), expected});
    } else if (key == "invariant") {
      cfg.invariants.push_back(value);
    } else if (key == "invariant_value") {
      auto [index, v] = split_pair(value, line);
      cfg.invariant_values.push_back({parse_count(index, line), v});
    } else if (key == "initial") {
      cfg.initial = split_words(value);
    } else if (key == "t_end") {
      cfg.t_end = parse_double(value, line);
    } else if (key == "dt") {
      cfg.dt = parse_double(value, line);
    } else if (key == "drift_tol") {
      cfg.drift_tol = parse_double(value, line);
    } else if (key == "ring") {
      cfg.ring = parse_count(value, line);
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!header) throw ParseError("empty scenario", line);
  if (cfg.name.empty()) throw ParseError("scenario needs a name", line);
  if (cfg.variables.empty()) throw ParseError("scenario needs variables", line);
  if (cfg.hamiltonians.empty() == cfg.field.empty()) {
    throw ParseError("give either hamiltonians or an explicit field", line);
  }
  return cfg;
}

std::string format_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "nambu-scenario " << kScenarioVersion << "\n";
  out << "name = " << cfg.name << "\n";
  out << "variables = " << join(cfg.variables, " ") << "\n";
  for (const auto& h : cfg.hamiltonians) out << "hamiltonian = " << h << "\n";
  if (!cfg.field.empty()) out << "field = " << join(cfg.field, " ; ") << "\n";
  if (!cfg.expect_field.empty()) out << "expect_field = " << join(cfg.expect_field, " ; ") << "\n";
  for (const auto& t : cfg.published) {
    out << "published = " << format_basis(t.basis) << " : " << t.coefficient << "\n";
  }
  for (const auto& t : cfg.homotopy) {
    out << "homotopy = " << format_basis(t.basis) << " : " << t.coefficient << "\n";
  }
  for (const auto& p : cfg.parameters) out << "parameter = " << p.name << " : " << p.relation << "\n";
  for (const auto& row : cfg.lax) out << "lax = " << join(row, " ; ") << "\n";
  for (const auto& row : cfg.partner) out << "partner = " << join(row, " ; ") << "\n";
  for (const auto& t : cfg.traces) out << "trace = " << t.power << " : " << t.expected << "\n";
  for (const auto& inv : cfg.invariants) out << "invariant = " << inv << "\n";
  for (const auto& v : cfg.invariant_values) {
    out << "invariant_value = " << v.index << " : " << v.value << "\n";
  }
  if (!cfg.initial.empty()) out << "initial = " << join(cfg.initial, " ") << "\n";
  out << "t_end = " << format_double(cfg.t_end) << "\n";
  out << "dt = " << format_double(cfg.dt) << "\n";
  out << "drift_tol = " << format_double(cfg.drift_tol) << "\n";
  if (cfg.ring) out << "ring = " << *cfg.ring << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Shipped scenarios

namespace {

const char* const kSolidBody = R"(nambu-scenario 1
name = solid-body
variables = x y z
hamiltonian = (x^2 + y^2 + z^2)/2
hamiltonian = x + y + z
expect_field = y - z ; z - x ; x - y
published = dx : (y^2 + z^2 - x*(y + z))/3
published = dy : (z^2 + x^2 - y*(z + x))/3
published = dz : (x^2 + y^2 - z*(x + y))/3
homotopy = dx : (y^2 + z^2 - x*(y + z))/3
homotopy = dy : (z^2 + x^2 - y*(z + x))/3
homotopy = dz : (x^2 + y^2 - z*(x + y))/3
lax = x ; z ; y
lax = z ; y ; x
lax = y ; x ; z
partner = 0 ; -1/2 ; 1/2
partner = 1/2 ; 0 ; -1/2
partner = -1/2 ; 1/2 ; 0
trace = 1 : x + y + z
trace = 2 : 3/2*(x^2 + y^2 + z^2)
invariant = x + y + z
invariant = 3/2*(x^2 + y^2 + z^2)
initial = 1 1/2 -1/4
t_end = 10
dt = 0.001
drift_tol = 1e-8
)";

const char* const kIshii = R"(nambu-scenario 1
name = ishii
variables = x y z
hamiltonian = x*z - y^2/2 - x^3/3
hamiltonian = x^2/2 - z
expect_field = y ; z ; x*y
published = dx : (z^2 - x*y^2)/4
published = dy : (x^2*y - 2*y*z)/4
published = dz : (y^2 - 2*x*z)/4
# radial homotopy output; differs from the published form by an exact form
homotopy = dx : z^2/3 - x*y^2/4
homotopy = dy : x^2*y/4 - y*z/3
homotopy = dz : y^2/3 - x*z/3
lax = -x ; 0 ; 1
lax = -y ; 0 ; 0
lax = -z ; y/2 ; 0
partner = 1 ; 1/2 ; 0
partner = 0 ; 1 ; 1
partner = y/2 ; x/2 ; 1
trace = 2 : x^2/2 - z
trace = 3 : x*z - y^2/2 - x^3/3
invariant = x*z - y^2/2 - x^3/3
invariant = x^2/2 - z
initial = -1 1/5 0
t_end = 10
dt = 0.001
drift_tol = 1e-8
)";

const char* const kOscillator = R"(nambu-scenario 1
name = oscillator
variables = x0 x1
hamiltonian = (x0^2 + x1^2)/2
expect_field = -x1 ; x0
homotopy = 1 : -(x0^2 + x1^2)/2
invariant = (x0^2 + x1^2)/2
invariant_value = 0 : 1/2
initial = 1 0
t_end = 10
dt = 0.001
drift_tol = 1e-8
)";

std::vector<FormTerm> form_terms(const DiffForm& form) {
  std::vector<FormTerm> out;
  const VariableNames& names = form.names();
  for (const auto& [idx, c] : form.components()) {
    FormTerm term;
    for (std::size_t i : idx) term.basis.push_back((*names)[i]);
    term.coefficient = c.to_string();
    out.push_back(std::move(term));
  }
  return out;
}

ScenarioConfig ring_scenario(std::size_t n) {
  ScenarioConfig cfg;
  cfg.name = "ring-" + std::to_string(n);
  for (std::size_t i = 0; i < n; ++i) cfg.variables.push_back("c" + std::to_string(i));
  for (std::size_t j = 0; j < n; ++j) cfg.field.push_back("c" + std::to_string((j + 1) % n));
  if (n == 3 || n == 4) cfg.published = form_terms(ring_vector_hamiltonian(n).published.form);

  RingLaxPair pair = ring_lax_pair(n);
  cfg.parameters.push_back({"s", pair.relation.to_string()});
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::string> lrow;
    std::vector<std::string> mrow;
    for (std::size_t c = 0; c < n; ++c) {
      lrow.push_back(pair.pair.lax(r, c).to_string());
      mrow.push_back(pair.pair.partner(r, c).to_string());
    }
    cfg.lax.push_back(lrow);
    cfg.partner.push_back(mrow);
  }
  switch (n) {
    case 2:
      cfg.traces.push_back({2, "c1^2 - c0^2"});
      cfg.invariants = {"c1^2 - c0^2"};
      cfg.invariant_values = {{0, "-1"}};
      cfg.t_end = 1;
      cfg.drift_tol = 1e-12;
      break;
    case 3:
      cfg.traces.push_back({3, "c0^3 + c1^3 + c2^3 - 3*c0*c1*c2"});
      cfg.invariants = {"c0^3 + c1^3 + c2^3 - 3*c0*c1*c2"};
      cfg.invariant_values = {{0, "1"}};
      cfg.t_end = 3;
      cfg.drift_tol = 1e-10;
      break;
    case 4:
      cfg.traces.push_back({2, "-2*c0^2 + 4*c1*c3 - 2*c2^2"});
      cfg.invariants = {"2*(2*c0*c2 - c1^2 - c3^2)", "-2*c0^2 + 4*c1*c3 - 2*c2^2"};
      cfg.invariant_values = {{0, "0"}, {1, "-2"}};
      cfg.t_end = 2;
      cfg.drift_tol = 1e-10;
      break;
    default:
      break;
  }
  cfg.initial.assign(n, "0");
  cfg.initial[0] = "1";
  cfg.dt = 1e-3;
  cfg.ring = n;
  return cfg;
}

}  // namespace

std::vector<std::string> shipped_scenario_names() {
  return {"solid-body", "ishii", "ring-2", "ring-3", "ring-4", "oscillator"};
}

ScenarioConfig shipped_scenario(const std::string& name) {
  if (name == "solid-body") return parse_scenario(kSolidBody);
  if (name == "ishii") return parse_scenario(kIshii);
  if (name == "oscillator") return parse_scenario(kOscillator);
  if (name == "ring-2") return ring_scenario(2);
  if (name == "ring-3") return ring_scenario(3);
  if (name == "ring-4") return ring_scenario(4);
  throw DomainError("unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

struct Outcome {
  bool passed = false;
  std::string residual;
  std::string detail;
};

Outcome exact(const std::string& residual, std::string detail = {}) {
  return {residual == "0", residual, std::move(detail)};
}

Outcome numeric(double value, double tol) {
  return {std::isfinite(value) && value < tol, scientific(value), "tolerance " + scientific(tol)};
}

// Renders a list of polynomial differences; "0" when all vanish.
std::string list_residual(const std::vector<Polynomial>& diffs) {
  bool all_zero = std::all_of(diffs.begin(), diffs.end(), [](const Polynomial& p) { return p.is_zero(); });
  if (all_zero) return "0";
  std::vector<std::string> parts;
  for (const auto& d : diffs) parts.push_back(d.to_string());
  return "(" + join(parts, ", ") + ")";
}

class Verifier {
 public:
  Verifier(const ScenarioConfig& cfg, const VerifyOptions& options)
      : cfg_(cfg), options_(options), n_(cfg.variables.size()) {
    names_ = make_names(cfg.variables);
    std::vector<std::string> ext = cfg.variables;
    for (const auto& p : cfg.parameters) ext.push_back(p.name);
    ext_names_ = make_names(ext);
    for (std::size_t i = 0; i < cfg.parameters.size(); ++i) {
      relations_.emplace_back(n_ + i, parse_polynomial(cfg.parameters[i].relation, ext_names_));
    }

    for (const auto& h : cfg.hamiltonians) hamiltonians_.push_back(base(h));
    if (!hamiltonians_.empty()) {
      system_.emplace(n_, hamiltonians_, cfg.name);
      flow_ = rhs_from_bracket(*system_);
    } else {
      if (cfg.field.size() != n_) throw DimensionError("field needs one component per variable");
      for (const auto& f : cfg.field) flow_.rhs.push_back(base(f));
    }
    flow_.provenance = cfg.name;
    field_ = vector_field(flow_.rhs);
    flux_ = contract(field_, volume_form(n_, names_));
    for (const auto& inv : cfg.invariants) invariants_.push_back(base(inv));
    if (!cfg.published.empty()) published_ = form(cfg.published);
  }

  VerificationReport run() {
    report_.scenario = cfg_.name;
    if (!cfg_.expect_field.empty()) {
      add("flow.expected", "flow components equal the expected field", [&] {
        if (cfg_.expect_field.size() != n_) throw DimensionError("expected field has wrong length");
        std::vector<Polynomial> diffs;
        for (std::size_t i = 0; i < n_; ++i) diffs.push_back(flow_.rhs[i] - base(cfg_.expect_field[i]));
        return exact(list_residual(diffs));
      });
    }
    add("flow.divergence", "div X = 0", [&] { return exact(divergence(flow_).to_string()); });
    add("liouville", "d(X ⌟ Ω) = 0", [&] {
      CheckResult r = liouville_check(field_);
      return exact(r.residual);
    });

    std::optional<VectorHamiltonian> homotopy_h;
    add("homotopy.recovery", "h = homotopy(X ⌟ Ω) satisfies dh = X ⌟ Ω", [&] {
      homotopy_h = flow_to_vector_hamiltonian(field_);
      DiffForm residual = exterior_derivative(homotopy_h->form) - flux_;
      return exact(residual.to_string(), "h = " + homotopy_h->form.to_string());
    });
    if (!cfg_.homotopy.empty()) {
      add("homotopy.expected", "homotopy output equals the expected form", [&] {
        if (!homotopy_h) throw Error("homotopy recovery failed");
        return exact((homotopy_h->form - form(cfg_.homotopy).form).to_string());
      });
    }
    if (published_) {
      add("vector_hamiltonian.published", "d(h_published) = X ⌟ Ω", [&] {
        return exact((exterior_derivative(published_->form) - flux_).to_string());
      });
      add("vector_hamiltonian.gauge", "h_published - h_homotopy is exact", [&] {
        if (!homotopy_h) throw Error("homotopy recovery failed");
        DiffForm diff = published_->form - homotopy_h->form;
        if (diff.is_zero()) return exact("0", "forms coincide");
        DiffForm closed = exterior_derivative(diff);
        if (!closed.is_zero()) return exact(closed.to_string());
        DiffForm potential = homotopy(diff);
        DiffForm residual = exterior_derivative(potential) - diff;
        return exact(residual.to_string(),
                     "h_published - h_homotopy = d(" + potential.to_string() + ")");
      });
    }
    auto main_h = [&]() -> const VectorHamiltonian& {
      if (published_) return *published_;
      if (!homotopy_h) throw Error("no vector Hamiltonian available");
      return *homotopy_h;
    };

    if (system_ && system_->arity() + 1 == n_) {
      add("factorization", "dh = (-1)^(n-1) dH1 ^ ... ^ dH(n-1)", [&] {
        return exact(verify_factorization(main_h(), hamiltonians_).residual);
      });
      add("bracket.jacobian", "{H1, ..., x_i} equals the Jacobian determinant", [&] {
        std::vector<Polynomial> diffs;
        for (std::size_t i = 0; i < n_; ++i) {
          Polynomial xi = Polynomial::variable(n_, i, names_);
          std::vector<Polynomial> fns = hamiltonians_;
          fns.push_back(xi);
          diffs.push_back(nambu_bracket(*system_, xi) - jacobian_bracket(fns));
        }
        return exact(list_residual(diffs));
      });
    }

    if (!cfg_.lax.empty()) {
      add("lax.residual", "dL/dt - [M, L] = 0", [&] {
        LaxPair pair{matrix(cfg_.lax), matrix(cfg_.partner), flow_};
        PolyMatrix residual = reduce(lax_residual(pair));
        return exact(residual.is_zero() ? "0" : residual.to_string());
      });
      for (const auto& t : cfg_.traces) {
        add("lax.trace." + std::to_string(t.power),
            "(1/" + std::to_string(t.power) + ") tr L^" + std::to_string(t.power) +
                " equals " + t.expected,
            [&] {
              Polynomial got = reduce(trace_invariant(matrix(cfg_.lax), t.power));
              return exact((got - ext(t.expected)).to_string(), "computed " + got.to_string());
            });
      }
    }

    for (std::size_t i = 0; i < invariants_.size(); ++i) {
      const std::string prefix = "invariant." + std::to_string(i);
      add(prefix + ".conserved", "dI/dt = 0 along the flow for I = " + cfg_.invariants[i],
          [&, i] { return exact(derivative_along(invariants_[i], flow_).to_string()); });
      add(prefix + ".involution", "{h, I} = X_h ⌟ dI = 0", [&, i] {
        return exact(involution_check(main_h(), invariants_[i]).to_string());
      });
    }

    add("theorem.random", "random H: X_H^(n-1) ⌟ Ω = dH and d(X_H^k ⌟ Ω) = 0", [&] {
      return theorem_check();
    });
    add("cartan", "d(i) = I in extended space", [&] {
      CartanVolume cv = cartan_volume(flow_);
      return exact(cv.residual.to_string(), "dt sign " + std::to_string(cv.dt_sign) +
                                                 "; i = " + cv.primitive.to_string());
    });

    if (!cfg_.initial.empty()) numeric_checks();
    if (cfg_.ring) ring_checks(*cfg_.ring);
    return std::move(report_);
  }

 private:
  Polynomial base(const std::string& text) const { return parse_polynomial(text, names_); }
  Polynomial ext(const std::string& text) const { return parse_polynomial(text, ext_names_); }
  std::size_t ext_dim() const { return ext_names_->size(); }
  double tol(double fallback) const { return options_.tol.value_or(fallback); }

  Polynomial reduce(Polynomial p) const {
    for (const auto& [var, rel] : relations_) p = reduce_modulo(p, var, rel);
    return p;
  }
  PolyMatrix reduce(PolyMatrix m) const {
    for (const auto& [var, rel] : relations_) m = reduce_modulo(m, var, rel);
    return m;
  }

  PolyMatrix matrix(const std::vector<std::vector<std::string>>& rows) const {
    std::vector<std::vector<Polynomial>> parsed;
    for (const auto& row : rows) {
      std::vector<Polynomial> r;
      for (const auto& e : row) r.push_back(ext(e));
      parsed.push_back(std::move(r));
    }
    return PolyMatrix::from_rows(parsed);
  }

  VectorHamiltonian form(const std::vector<FormTerm>& terms) const {
    const std::size_t degree = terms.front().basis.size();
    DiffForm out(degree, n_, names_);
    for (const auto& t : terms) {
      if (t.basis.size() != degree) throw DomainError("form terms of mixed degree");
      IndexTuple idx;
      for (const auto& b : t.basis) {
        auto it = std::find(cfg_.variables.begin(), cfg_.variables.end(), b);
        if (it == cfg_.variables.end()) throw DomainError("unknown differential d" + b);
        idx.push_back(static_cast<std::size_t>(it - cfg_.variables.begin()));
      }
      out.add(idx, base(t.coefficient));
    }
    return {out};
  }

  void add(const std::string& id, const std::string& description,
           const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{id, description, false, "", ""};
    try {
      Outcome o = body();
      result.passed = o.passed;
      result.residual = o.residual;
      result.detail = o.detail;
    } catch (const std::exception& e) {
      result.residual = std::string("error: ") + e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    report_.checks.push_back(std::move(result));
    report_.elapsed_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }

  Outcome theorem_check() const {
    std::mt19937_64 rng(options_.seed);
    const DiffForm omega = volume_form(n_, names_);
    std::size_t failures = 0;
    constexpr int kCases = 10;
    for (int c = 0; c < kCases; ++c) {
      Polynomial h = random_polynomial(rng, n_, 3, 0.5, names_);
      for (std::size_t k = 1; k < n_; ++k) {
        DiffForm theta = contract(canonical_polyvector(h, k), omega);
        bool ok = exterior_derivative(theta).is_zero();
        if (k + 1 == n_) ok = ok && theta == differential(h);
        if (!ok) ++failures;
      }
    }
    return {failures == 0, failures == 0 ? "0" : std::to_string(failures) + " failures",
            std::to_string(kCases) + " cases, seed " + std::to_string(options_.seed)};
  }

  void numeric_checks() {
    std::vector<Scalar> exact_start;
    std::vector<double> start;
    std::optional<Trajectory> trajectory;
    std::string failure;
    try {
      if (cfg_.initial.size() != n_) throw DimensionError("initial state has wrong length");
      for (const auto& v : cfg_.initial) {
        exact_start.push_back(Scalar::from_string(v));
        start.push_back(exact_start.back().to_double());
      }
      trajectory = integrate(flow_, start, cfg_.t_end, cfg_.dt);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double drift_tol = tol(cfg_.drift_tol);
    for (std::size_t i = 0; i < invariants_.size(); ++i) {
      add("invariant." + std::to_string(i) + ".drift",
          "RK4 drift of I over [0, " + format_double(cfg_.t_end) + "], dt = " +
              format_double(cfg_.dt),
          [&, i] {
            if (!trajectory) throw Error(failure);
            return numeric(invariant_drift(*trajectory, invariants_[i]).max_drift, drift_tol);
          });
    }
    for (const auto& v : cfg_.invariant_values) {
      add("invariant." + std::to_string(v.index) + ".value",
          "I = " + v.value + " along the trajectory", [&] {
            if (!trajectory) throw Error(failure);
            if (v.index >= invariants_.size()) throw DomainError("invariant index out of range");
            const Polynomial& inv = invariants_[v.index];
            Scalar expected = Scalar::from_string(v.value);
            Scalar initial = inv.evaluate(std::span<const Scalar>(exact_start));
            if (!(initial == expected)) {
              return Outcome{false, "I(x0) = " + initial.to_string(), ""};
            }
            CompiledPolynomial f(inv);
            double worst = 0.0;
            for (const auto& s : trajectory->states) {
              worst = std::max(worst, std::abs(f(s) - expected.to_double()));
            }
            return numeric(worst, drift_tol);
          });
    }
  }

  void ring_checks(std::size_t n) {
    add("ring.pauli", "Σ1^n = Σ0, σ^n = 1, sum σ^k = 0", [&] {
      PauliIdentityResiduals r = pauli_identity_residuals(gen_pauli(n));
      return numeric(std::max({r.shift_order, r.sigma_order, r.sigma_sum}), tol(1e-12));
    });
    add("ring.exp", "expm(tΣ1) = sum c_j(t) Σ1^j for t in {0.5, 1, 2}", [&] {
      double worst = 0.0;
      for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, exp_reconstruction_check(n, t));
      return numeric(worst, tol(1e-10));
    });
    add("ring.series", "RK4 solution from e0 equals (c0, c_(n-1), ..., c1) on [0, 2]", [&] {
      std::vector<double> e0(n, 0.0);
      e0[0] = 1.0;
      Trajectory tr = integrate(flow_, e0, 2.0, 1e-3);
      double worst = 0.0;
      for (std::size_t s = 0; s < tr.times.size(); s += 50) {
        std::vector<double> c = c_series_vector(n, tr.times[s], 1e-16);
        for (std::size_t j = 0; j < n; ++j) {
          worst = std::max(worst, std::abs(tr.states[s][j] - c[(n - j) % n]));
        }
      }
      return numeric(worst, tol(1e-8));
    });
  }

  const ScenarioConfig& cfg_;
  VerifyOptions options_;
  std::size_t n_;
  VariableNames names_;
  VariableNames ext_names_;
  std::vector<std::pair<std::size_t, Polynomial>> relations_;
  std::vector<Polynomial> hamiltonians_;
  std::optional<HamiltonianSystem> system_;
  FlowSystem flow_;
  PolyVector field_{1, 1};
  DiffForm flux_{0, 1};
  std::vector<Polynomial> invariants_;
  std::optional<VectorHamiltonian> published_;
  VerificationReport report_;
};

}  // namespace

VerificationReport verify(const ScenarioConfig& config, const VerifyOptions& options) {
  return Verifier(config, options).run();
}

std::string report_json(const VerificationReport& report) {
  nlohmann::ordered_json out;
  out["scenario"] = report.scenario;
  out["passed"] = report.passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json item;
    item["id"] = c.id;
    item["description"] = c.description;
    item["status"] = c.passed ? "pass" : "fail";
    item["residual"] = c.residual;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  out["checks"] = std::move(checks);
  return out.dump(2) + "\n";
}

std::string report_text(const VerificationReport& report) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    passed += c.passed ? 1 : 0;
    out << (c.passed ? "PASS " : "FAIL ") << c.id << "  residual: " << c.residual << "\n";
    if (!c.detail.empty()) out << "     " << c.detail << "\n";
  }
  out << report.scenario << ": " << passed << "/" << report.checks.size() << " checks passed\n";
  return out.str();
}

}  // namespace nambu
