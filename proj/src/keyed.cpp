#include "qsym/keyed.hpp"

namespace qsym {

std::string key_string(const Key& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

std::string tensor_key_string(const TensorKey& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += "*";
    s += key_string(k[i]);
  }
  return s.empty() ? "()" : s;
}

LinN concat(const LinN& a, const LinN& b) {
  LinN out(a.field());
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      TensorKey k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add(k, ca * cb);
    }
  return out;
}

}  // namespace qsym
