#include "commands.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

#include "qsym/pairing.hpp"
#include "spec.hpp"

namespace qsym::cli {

namespace {

using nlohmann::ordered_json;

ordered_json scalar_json(const Scalar& s) {
  if (s.field().is_prime_field()) return std::stoll(s.to_string());
  return s.to_string();
}

// Display names for labels of T_n.
class Words {
 public:
  Words(const Spec& s, const TensorModel& t) : spec_(s), t_(t) {}

  std::string operator()(std::size_t n, const Key& k) const {
    const Couple& c = spec_.couple;
    if (c.is_diagonal()) {
      const auto& fm = static_cast<const FreeModel&>(t_);
      Key g = n == 0 ? k : fm.group_part(k);
      std::string out;
      if (g != c.hopf().identity()) out = "g" + key_string(g);
      if (n == 0) return out.empty() ? "1" : out;
      std::string w;
      for (auto a : fm.letters(k)) w += (w.empty() ? "" : ".") + spec_.letters.at(a);
      return out.empty() ? w : out + "*" + w;
    }
    if (n == 0) return "h" + std::to_string(k.at(0));
    if (n == 1) return "m" + std::to_string(k.at(0));
    const LinN rep = t_.lift(n, k);
    std::string out;
    for (const auto& [tk, a] : rep) {
      std::string w;
      for (const auto& f : tk) w += (w.empty() ? "" : ".") + std::string("m") + std::to_string(f.at(0));
      out += (out.empty() ? "" : " + ") + (a == t_.field().one() ? w : a.to_string() + "*" + w);
    }
    return out;
  }

  std::string combination(std::size_t n, const Lin& x) const {
    std::string out;
    for (const auto& [k, a] : x) {
      std::string w = (*this)(n, k);
      bool neg = !spec_.field.is_prime_field() && a.to_string().front() == '-';
      Scalar mag = neg ? -a : a;
      std::string term = mag == spec_.field.one() ? w : mag.to_string() + "*" + w;
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  const Spec& spec_;
  const TensorModel& t_;
};

ordered_json report_json(const ValidationReport& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"cases", c.cases},
                      {"witness", c.witness}});
  return {{"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}};
}

void report_table(std::ostringstream& t, const ValidationReport& r) {
  t << r.subject << ": " << (r.passed() ? "pass" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    t << "  " << std::left << std::setw(36) << c.name << (c.skipped ? "skipped" : c.passed ? "pass" : "FAIL");
    if (!c.skipped) t << " (" << c.cases << " cases)";
    if (!c.witness.empty()) t << "  " << c.witness;
    t << "\n";
  }
}

class Clock {
 public:
  explicit Clock(bool on) : on_(on) {}
  template <class F>
  auto time(const std::string& name, F&& f) {
    auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      if (on_) seconds_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto r = f();
      finish();
      return r;
    }
  }
  ordered_json json() const {
    if (!on_) return {{"recorded", false}};
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : seconds_) s[k] = v;
    return {{"recorded", true}, {"seconds", s}};
  }

 private:
  bool on_;
  std::map<std::string, double> seconds_;
};

template <class F>
auto maybe_async(bool parallel, F f) {
  return std::async(parallel ? std::launch::async : std::launch::deferred, std::move(f));
}

ordered_json empty_report(const Options& o) {
  ordered_json r;
  r["command"] = {{"name", o.command},
                  {"spec", o.spec_path},
                  {"max_degree", o.max_degree ? ordered_json(*o.max_degree) : ordered_json(nullptr)},
                  {"degree", o.degree ? ordered_json(*o.degree) : ordered_json(nullptr)},
                  {"cap", o.cap ? ordered_json(*o.cap) : ordered_json(nullptr)},
                  {"parallel", o.parallel}};
  r["status"] = "error";
  r["error"] = nullptr;
  r["couple"] = nullptr;
  for (const char* k : {"validation", "hilbert", "relations", "gram", "checks"}) r[k] = nullptr;
  r["timing"] = {{"recorded", false}};
  return r;
}

ordered_json couple_json(const Spec& s) {
  const Couple& c = s.couple;
  ordered_json j = {{"kind", c.is_diagonal() ? "diagonal" : "raw"},
                    {"field", s.field.name()},
                    {"finite", c.is_finite()},
                    {"hopf_dim", c.is_finite() ? ordered_json(c.hopf().dim()) : ordered_json(nullptr)},
                    {"module_dim", c.is_finite() ? ordered_json(c.dim()) : ordered_json(nullptr)},
                    {"pairing", s.pairing.has_value()}};
  if (c.is_diagonal()) j["letters"] = s.letters;
  return j;
}

struct Context {
  const Options& o;
  const Spec& spec;
  Outcome& out;
  std::ostringstream& t;
  Clock& clock;
  std::size_t max_degree;
  std::size_t degree;
  std::size_t cap;
};

bool cmd_validate(Context& x) {
  const Couple& c = x.spec.couple;
  const std::int64_t r = x.spec.radius;
  std::vector<std::function<ValidationReport()>> jobs = {
      [&] {
        auto rep = validate_hopf(c.hopf(), r);
        rep.subject = "hopf algebra axioms";
        return rep;
      },
      [&] {
        auto rep = validate_hopf_bimodule(c, r);
        rep.subject = "hopf bimodule axioms";
        return rep;
      }};
  if (x.spec.pairing) {
    jobs.push_back([&] {
      auto rep = validate_hopf_pairing(x.spec.pairing->phi0(), c.hopf(), c.hopf(), r);
      rep.subject = "hopf pairing axioms";
      return rep;
    });
    jobs.push_back([&] {
      auto rep = validate_couple_pairing(*x.spec.pairing, c, c, r);
      rep.subject = "couple pairing axioms";
      return rep;
    });
  }
  std::vector<std::future<ValidationReport>> fs;
  for (auto& j : jobs) fs.push_back(maybe_async(x.o.parallel, j));
  ordered_json v = ordered_json::array();
  bool pass = true;
  x.clock.time("validation", [&] {
    for (auto& f : fs) {
      auto rep = f.get();
      pass = pass && rep.passed();
      v.push_back(report_json(rep));
      report_table(x.t, rep);
    }
  });
  x.out.report["validation"] = v;
  return pass;
}

std::unique_ptr<PairingEngine> engine_for(Context& x) {
  if (!x.spec.pairing) return nullptr;
  return std::make_unique<PairingEngine>(*x.spec.pairing, x.spec.couple, x.spec.couple, x.cap, x.spec.radius);
}

bool cmd_hilbert(Context& x) {
  auto engine = engine_for(x);
  std::shared_ptr<const TensorModel> model = make_tensor_model(x.spec.couple, x.cap);
  Symmetrizer own(model);
  const Symmetrizer& omega = engine ? engine->first_symmetrizer() : own;

  struct Row {
    std::optional<std::size_t> dim, gram;
  };
  std::vector<std::future<Row>> fs;
  for (std::size_t n = 0; n <= x.max_degree; ++n)
    fs.push_back(maybe_async(x.o.parallel, [&, n] {
      Row row;
      try {
        row.dim = rank(symmetrizer_matrix(omega, n).matrix);
        if (engine) row.gram = rank(engine->gram(n).matrix);
      } catch (const ResourceLimit&) {
        row = Row{};
      }
      return row;
    }));
  std::vector<std::size_t> dims, gdims;
  bool truncated = false;
  x.clock.time("hilbert", [&] {
    for (auto& f : fs) {
      Row row = f.get();
      if (truncated || !row.dim || (engine && !row.gram)) {
        truncated = true;
        continue;
      }
      dims.push_back(*row.dim);
      if (engine) gdims.push_back(*row.gram);
    }
  });
  const bool agree = !engine || dims == gdims;
  const bool reduced = model->kind() == TensorModel::Kind::free;
  x.out.report["hilbert"] = {{"mode", reduced ? "reduced" : "full"},
                             {"max_degree", x.max_degree},
                             {"dims", dims},
                             {"gram_dims", engine ? ordered_json(gdims) : ordered_json(nullptr)},
                             {"agree", agree},
                             {"truncated", truncated}};
  x.t << "hilbert series (" << (reduced ? "reduced" : "full") << ")\n";
  x.t << std::left << std::setw(4) << "n" << std::setw(12) << "dim S_n" << std::setw(12) << "gram rank" << "agree\n";
  for (std::size_t n = 0; n < dims.size(); ++n) {
    x.t << std::setw(4) << n << std::setw(12) << dims[n] << std::setw(12)
        << (engine ? std::to_string(gdims[n]) : std::string("-")) << (engine ? (dims[n] == gdims[n] ? "yes" : "NO") : "-")
        << "\n";
  }
  if (truncated) x.t << "truncated: resource cap reached at degree " << dims.size() << "\n";
  if (truncated) x.out.exit_code = resource;
  return agree;
}

bool cmd_relations(Context& x) {
  std::shared_ptr<const TensorModel> model = make_tensor_model(x.spec.couple, x.cap);
  Symmetrizer omega(model);
  Words words(x.spec, *model);
  Relations r = x.clock.time("relations", [&] { return relations(omega, x.degree); });
  ordered_json list = ordered_json::array();
  x.t << "degree " << x.degree << ": " << r.basis.size() << " relation" << (r.basis.size() == 1 ? "" : "s") << " among "
      << r.words.size() << " words\n";
  for (const auto& rel : r.basis) {
    std::string s = words.combination(x.degree, rel);
    list.push_back(s);
    x.t << "  " << s << "\n";
  }
  if (r.basis.empty()) x.t << "  none\n";
  x.out.report["relations"] = {{"degree", x.degree}, {"words", r.words.size()}, {"count", r.basis.size()}, {"relations", list}};
  return true;
}

bool cmd_gram(Context& x) {
  auto engine = engine_for(x);
  if (!engine) throw SpecError("/pairing", "the gram command needs a pairing");
  Words words(x.spec, engine->first());
  const std::size_t n = x.degree;
  auto tt = x.clock.time("gram", [&] { return engine->gram(n); });
  auto tc = x.clock.time("gram_vs_cotensor", [&] { return engine->gram_vs_cotensor(n); });
  ordered_json rows = ordered_json::array(), cols = ordered_json::array(), m = ordered_json::array();
  for (const auto& k : tt.rows) rows.push_back(words(n, k));
  for (const auto& k : tt.cols) cols.push_back(words(n, k));
  for (std::size_t i = 0; i < tt.matrix.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < tt.matrix.cols(); ++j) row.push_back(scalar_json(tt.matrix.get(i, j)));
    m.push_back(row);
  }
  const std::size_t r = rank(tt.matrix), rc = rank(tc.matrix);
  x.out.report["gram"] = {{"degree", n},
                          {"rows", rows},
                          {"cols", cols},
                          {"matrix", m},
                          {"rank", r},
                          {"cotensor", {{"cols", tc.cot_cols.size()}, {"rank", rc}}}};
  x.t << "gram matrix in degree " << n << " (" << tt.rows.size() << " x " << tt.cols.size() << ", rank " << r << ")\n";
  std::size_t width = 4;
  for (const auto& row : m)
    for (const auto& v : row) width = std::max(width, v.dump().size() + 2);
  for (std::size_t i = 0; i < tt.rows.size(); ++i) {
    x.t << "  " << std::left << std::setw(16) << rows[i].get<std::string>();
    for (const auto& v : m[i]) x.t << std::right << std::setw(static_cast<int>(width)) << (v.is_string() ? v.get<std::string>() : v.dump());
    x.t << "\n";
  }
  x.t << "against the cotensor component: " << tc.cot_cols.size() << " columns, rank " << rc << "\n";
  return true;
}

bool cmd_check(Context& x) {
  auto engine = engine_for(x);
  const std::size_t d = x.max_degree;
  std::vector<std::pair<std::string, std::function<ValidationReport()>>> jobs;
  if (engine) {
    jobs.emplace_back("induced_pairing", [&] { return verify_theorem31(*engine, d, 100, 1); });
    jobs.emplace_back("radicals", [&] { return verify_theorem32(*engine, d); });
    jobs.emplace_back("self_duality", [&] { return self_dual_check(x.spec.couple, *x.spec.pairing, d, x.cap, x.spec.radius); });
  }
  jobs.emplace_back("wedge", [&] { return verify_wedge_fact(x.spec.couple, d, x.spec.radius, x.cap); });
  std::vector<std::future<ValidationReport>> fs;
  for (auto& [name, job] : jobs) fs.push_back(maybe_async(x.o.parallel, job));
  ordered_json checks = ordered_json::object();
  bool pass = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto rep = x.clock.time(jobs[i].first, [&] { return fs[i].get(); });
    pass = pass && rep.passed();
    checks[jobs[i].first] = report_json(rep);
    report_table(x.t, rep);
  }
  if (!engine) x.t << "no pairing given: pairing checks not run\n";
  x.out.report["checks"] = checks;
  return pass;
}

}  // namespace

Outcome run(const Options& o) {
  Outcome out;
  out.report = empty_report(o);
  std::ostringstream t;
  Clock clock(o.timing);
  try {
    Spec spec = load_spec(o.spec_path);
    out.report["couple"] = couple_json(spec);
    const std::size_t cap = o.cap.value_or(spec.cap);
    Context x{o, spec, out, t, clock, o.max_degree.value_or(spec.max_degree), o.degree.value_or(spec.max_degree), cap};
    t << o.command << " " << o.spec_path << "\n";
    bool pass = false;
    if (o.command == "validate")
      pass = cmd_validate(x);
    else if (o.command == "hilbert")
      pass = cmd_hilbert(x);
    else if (o.command == "relations")
      pass = cmd_relations(x);
    else if (o.command == "gram")
      pass = cmd_gram(x);
    else if (o.command == "check")
      pass = cmd_check(x);
    else
      throw SpecError("command", "unknown command '" + o.command + "'");
    out.report["status"] = pass ? "pass" : "fail";
    if (out.exit_code == ok) out.exit_code = pass ? ok : failed;
    t << "status: " << (pass ? "pass" : "FAIL") << "\n";
  } catch (const SpecError& e) {
    out.report["error"] = {{"where", e.where}, {"message", e.what()}};
    out.exit_code = bad_input;
    t << "error: " << e.what() << "\n";
  } catch (const ResourceLimit& e) {
    out.report["error"] = {{"where", "resource cap"}, {"message", e.what()}};
    out.exit_code = resource;
    t << "error: " << e.what() << "\n";
  } catch (const InvalidInput& e) {
    out.report["status"] = "fail";
    out.report["error"] = {{"where", "input"}, {"message", e.what()}};
    out.exit_code = failed;
    t << "error: " << e.what() << "\n";
  }
  out.report["timing"] = clock.json();
  out.table = t.str();
  return out;
}

}  // namespace qsym::cli
