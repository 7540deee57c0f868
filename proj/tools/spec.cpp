#include "spec.hpp"

#include <fstream>
#include <sstream>

namespace qsym::cli {

namespace {

using nlohmann::json;

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& member(const json& j, const std::string& at, const std::string& key) {
  if (!j.is_object()) throw SpecError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(ptr(at, key), "missing");
  return *it;
}

const json& array(const json& j, const std::string& at) {
  if (!j.is_array()) throw SpecError(at, "expected an array");
  return j;
}

std::int64_t integer(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw SpecError(at, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t count(const json& j, const std::string& at) {
  std::int64_t v = integer(j, at);
  if (v < 0) throw SpecError(at, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::size_t index(const json& j, const std::string& at, std::size_t bound) {
  std::size_t v = count(j, at);
  if (v >= bound) throw SpecError(at, "index " + std::to_string(v) + " out of range (dimension " + std::to_string(bound) + ")");
  return v;
}

Scalar scalar(const json& j, const std::string& at, const Field& f) {
  try {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) return f.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SpecError(at, e.what());
  }
  throw SpecError(at, "expected a scalar (integer or \"a/b\" string)");
}

std::vector<std::vector<Scalar>> scalar_matrix(const json& j, const std::string& at, const Field& f) {
  std::vector<std::vector<Scalar>> out;
  std::size_t width = 0;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) {
    const auto a = ptr(at, i);
    std::vector<Scalar> row;
    for (std::size_t k = 0; k < array(j[i], a).size(); ++k) row.push_back(scalar(j[i][k], ptr(a, k), f));
    if (i == 0) width = row.size();
    if (row.size() != width) throw SpecError(a, "ragged matrix row");
    out.push_back(std::move(row));
  }
  return out;
}

Matrix to_matrix(const std::vector<std::vector<Scalar>>& rows, const Field& f, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k) m.set(i, k, rows[i][k]);
  return m;
}

Matrix square(const json& j, const std::string& at, const Field& f, std::size_t n) {
  auto rows = scalar_matrix(j, at, f);
  if (rows.size() != n || (n && rows[0].size() != n))
    throw SpecError(at, "expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
  return to_matrix(rows, f, n);
}

// [[index, scalar], ...]
SparseVector sparse(const json& j, const std::string& at, const Field& f, std::size_t bound) {
  SparseVector v(f);
  for (std::size_t i = 0; i < array(j, at).size(); ++i) {
    const auto a = ptr(at, i);
    if (!j[i].is_array() || j[i].size() != 2) throw SpecError(a, "expected [index, scalar]");
    std::size_t k = index(j[i][0], ptr(a, 0), bound);
    v.set(k, v.get(k) + scalar(j[i][1], ptr(a, 1), f));
  }
  return v;
}

// [[a, b, scalar], ...]
std::vector<std::tuple<std::size_t, std::size_t, Scalar>> triples(const json& j, const std::string& at, const Field& f,
                                                                   std::size_t first, std::size_t second) {
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> out;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) {
    const auto a = ptr(at, i);
    if (!j[i].is_array() || j[i].size() != 3) throw SpecError(a, "expected [index, index, scalar]");
    out.emplace_back(index(j[i][0], ptr(a, 0), first), index(j[i][1], ptr(a, 1), second), scalar(j[i][2], ptr(a, 2), f));
  }
  return out;
}

std::vector<std::vector<SparseVector>> table(const json& j, const std::string& at, const Field& f, std::size_t rows,
                                             std::size_t cols, std::size_t bound) {
  if (array(j, at).size() != rows) throw SpecError(at, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<SparseVector>> out(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto a = ptr(at, i);
    if (array(j[i], a).size() != cols) throw SpecError(a, "expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) out[i].push_back(sparse(j[i][k], ptr(a, k), f, bound));
  }
  return out;
}

Field parse_field(const json& j, const std::string& at) {
  if (j.is_string()) {
    if (j.get<std::string>() == "rationals") return Field::rationals();
    throw SpecError(at, "unknown field '" + j.get<std::string>() + "'");
  }
  const auto p = integer(member(j, at, "prime"), ptr(at, "prime"));
  try {
    if (p < 2) throw InvalidInput(std::to_string(p) + " is not prime");
    return Field::prime(static_cast<std::uint64_t>(p));
  } catch (const InvalidInput& e) {
    throw SpecError(ptr(at, "prime"), e.what());
  }
}

HopfAlgebra parse_hopf(const json& j, const std::string& at, const Field& f) {
  const std::size_t d = count(member(j, at, "dim"), ptr(at, "dim"));
  if (d == 0) throw SpecError(ptr(at, "dim"), "dimension must be positive");
  StructureConstants sc(f, d);
  sc.mult = table(member(j, at, "mult"), ptr(at, "mult"), f, d, d, d);
  sc.unit = sparse(member(j, at, "unit"), ptr(at, "unit"), f, d);
  const auto& cm = array(member(j, at, "comult"), ptr(at, "comult"));
  if (cm.size() != d) throw SpecError(ptr(at, "comult"), "expected " + std::to_string(d) + " entries");
  for (std::size_t i = 0; i < d; ++i) sc.comult[i] = triples(cm[i], ptr(ptr(at, "comult"), i), f, d, d);
  const auto& cu = array(member(j, at, "counit"), ptr(at, "counit"));
  if (cu.size() != d) throw SpecError(ptr(at, "counit"), "expected " + std::to_string(d) + " entries");
  for (std::size_t i = 0; i < d; ++i) sc.counit[i] = scalar(cu[i], ptr(ptr(at, "counit"), i), f);
  sc.antipode = square(member(j, at, "antipode"), ptr(at, "antipode"), f, d);
  return HopfAlgebra::from_structure_constants(std::move(sc));
}

Couple parse_raw(const json& j, const std::string& at, const Field& f) {
  HopfAlgebra h = parse_hopf(member(j, at, "hopf"), ptr(at, "hopf"), f);
  const std::string mat = ptr(at, "module");
  const json& mj = member(j, at, "module");
  const std::size_t d = count(member(mj, mat, "dim"), ptr(mat, "dim"));
  const std::size_t hd = h.dim();
  RawBimodule m(f, d, hd);
  m.lact = table(member(mj, mat, "lact"), ptr(mat, "lact"), f, hd, d, d);
  m.ract = table(member(mj, mat, "ract"), ptr(mat, "ract"), f, d, hd, d);
  for (const char* key : {"lcoact", "rcoact"}) {
    const auto& co = array(member(mj, mat, key), ptr(mat, key));
    if (co.size() != d) throw SpecError(ptr(mat, key), "expected " + std::to_string(d) + " entries");
    for (std::size_t i = 0; i < d; ++i) {
      bool left = std::string(key) == "lcoact";
      auto t = triples(co[i], ptr(ptr(mat, key), i), f, left ? hd : d, left ? d : hd);
      (left ? m.lcoact : m.rcoact)[i] = std::move(t);
    }
  }
  try {
    return Couple::from_raw(std::move(h), std::move(m));
  } catch (const InvalidInput& e) {
    throw SpecError(at, e.what());
  }
}

DiagonalData parse_diagonal(const json& j, const std::string& at, const Field& f) {
  DiagonalData d;
  const auto& mod = array(member(j, at, "moduli"), ptr(at, "moduli"));
  for (std::size_t i = 0; i < mod.size(); ++i) d.moduli.push_back(integer(mod[i], ptr(ptr(at, "moduli"), i)));
  const auto& deg = array(member(j, at, "degrees"), ptr(at, "degrees"));
  for (std::size_t i = 0; i < deg.size(); ++i) {
    const auto a = ptr(ptr(at, "degrees"), i);
    Key g;
    for (std::size_t k = 0; k < array(deg[i], a).size(); ++k) g.push_back(integer(deg[i][k], ptr(a, k)));
    d.degrees.push_back(std::move(g));
  }
  d.q = scalar_matrix(member(j, at, "q"), ptr(at, "q"), f);
  if (j.contains("characters")) d.characters = scalar_matrix(j["characters"], ptr(at, "characters"), f);
  if (j.contains("rank") && count(j["rank"], ptr(at, "rank")) != d.theta())
    throw SpecError(ptr(at, "rank"), "rank does not match the number of degrees");
  return d;
}

std::vector<std::vector<std::size_t>> parse_table(const json& j, const std::string& at) {
  std::vector<std::vector<std::size_t>> t;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) {
    const auto a = ptr(at, i);
    std::vector<std::size_t> row;
    for (std::size_t k = 0; k < array(j[i], a).size(); ++k) row.push_back(count(j[i][k], ptr(a, k)));
    t.push_back(std::move(row));
  }
  return t;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Spec parse_spec(const json& j) {
  if (!j.is_object()) throw SpecError("", "expected a JSON object");
  if (integer(member(j, "", "version"), "/version") != 1) throw SpecError("/version", "unsupported version");
  const Field f = parse_field(member(j, "", "field"), "/field");

  const json& cj = member(j, "", "couple");
  if (!cj.is_object()) throw SpecError("/couple", "expected an object");
  const auto& kind_j = member(cj, "/couple", "kind");
  if (!kind_j.is_string()) throw SpecError("/couple/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  std::optional<DiagonalData> diag;
  std::optional<Couple> couple;
  std::vector<std::string> letters;
  if (kind == "diagonal") {
    diag = parse_diagonal(cj, "/couple", f);
    try {
      couple = build_diagonal_couple(*diag, f);
    } catch (const InvalidInput& e) {
      throw SpecError("/couple", e.what());
    }
    if (cj.contains("letters")) {
      const auto& l = array(cj["letters"], "/couple/letters");
      if (l.size() != diag->theta()) throw SpecError("/couple/letters", "one name per letter expected");
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (!l[i].is_string()) throw SpecError(ptr("/couple/letters", i), "expected a string");
        letters.push_back(l[i].get<std::string>());
      }
    } else if (diag->theta() == 1) {
      letters = {"v"};
    } else {
      for (std::size_t i = 0; i < diag->theta(); ++i) letters.push_back("v" + std::to_string(i + 1));
    }
  } else if (kind == "regular") {
    try {
      couple = regular_couple(build_group_algebra(parse_table(member(cj, "/couple", "table"), "/couple/table"), f));
    } catch (const InvalidInput& e) {
      throw SpecError("/couple/table", e.what());
    }
  } else if (kind == "raw") {
    couple = parse_raw(cj, "/couple", f);
  } else {
    throw SpecError("/couple/kind", "unknown couple kind '" + kind + "'");
  }

  std::optional<CouplePairing> pairing;
  if (j.contains("pairing") && !j["pairing"].is_null()) {
    const json& pj = j["pairing"];
    const auto& pk = member(pj, "/pairing", "kind");
    if (!pk.is_string()) throw SpecError("/pairing/kind", "expected a string");
    const std::string p = pk.get<std::string>();
    try {
      if (p == "self_dual_diagonal") {
        if (!diag) throw SpecError("/pairing/kind", "needs a diagonal couple");
        auto sd = build_self_dual_diagonal_pairing(*diag, f);
        pairing = sd.pairing;
      } else if (p == "diagonal") {
        if (!diag) throw SpecError("/pairing/kind", "needs a diagonal couple");
        auto phi0 = pj.contains("phi0") ? scalar_matrix(pj["phi0"], "/pairing/phi0", f) : diag->q;
        pairing = CouplePairing::diagonal(HopfPairing::bicharacter(f, phi0),
                                          square(member(pj, "/pairing", "letters"), "/pairing/letters", f, diag->theta()));
      } else if (p == "explicit") {
        if (diag) throw SpecError("/pairing/kind", "explicit matrices need a finite raw or regular couple");
        const std::size_t hd = couple->hopf().dim(), md = couple->dim();
        pairing = CouplePairing::explicit_matrix(
            HopfPairing::from_matrix(square(member(pj, "/pairing", "phi0"), "/pairing/phi0", f, hd)),
            square(member(pj, "/pairing", "phi1"), "/pairing/phi1", f, md));
      } else {
        throw SpecError("/pairing/kind", "unknown pairing kind '" + p + "'");
      }
    } catch (const InvalidInput& e) {
      throw SpecError("/pairing", e.what());
    }
  }

  Spec s{f, std::move(*couple), std::move(pairing), 4, 100000, 1, std::move(letters)};
  if (j.contains("max_degree")) s.max_degree = count(j["max_degree"], "/max_degree");
  if (j.contains("cap")) s.cap = count(j["cap"], "/cap");
  if (j.contains("radius")) s.radius = static_cast<std::int64_t>(count(j["radius"], "/radius"));
  return s;
}

Spec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
  return parse_spec(j);
}

}  // namespace qsym::cli
