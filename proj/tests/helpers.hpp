#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hypertor/errors.hpp"
#include "hypertor/module.hpp"

namespace testing {

using namespace hypertor;
using Fp = PrimeField;
using Poly = Polynomial<Fp>;
using Matrix = PolyMatrix<Fp>;
using Module = ModulePresentation<Fp>;

inline PolyRingPtr<Fp> polyRing(std::vector<std::string> vars, std::uint32_t p = 32003, std::vector<int> weights = {}) {
  return std::make_shared<const PolyRing<Fp>>(PrimeField(p), std::move(vars), std::move(weights));
}

inline RingSpecPtr<Fp> ringSpec(std::vector<std::string> vars, const std::string& f = "", std::uint32_t p = 32003,
                                std::vector<int> weights = {}) {
  auto s = polyRing(std::move(vars), p, std::move(weights));
  std::optional<Poly> eq;
  if (!f.empty()) eq = Poly::parse(s, f);
  return std::make_shared<const RingSpec<Fp>>(s, eq);
}

/// k[x,y,u,v]/(xu - yv).
inline RingSpecPtr<Fp> quadric() { return ringSpec({"x", "y", "u", "v"}, "x*u - y*v"); }

inline std::vector<Poly> polys(const PolyRingPtr<Fp>& s, const std::vector<std::string>& texts) {
  std::vector<Poly> out;
  for (const auto& t : texts) out.push_back(Poly::parse(s, t));
  return out;
}

inline Module cyclic(const RingSpecPtr<Fp>& r, const std::vector<std::string>& gens) {
  return Module::quotientByIdeal(r, polys(r->ambient(), gens));
}

inline Matrix matrix(const PolyRingPtr<Fp>& s, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Poly>> out;
  for (const auto& r : rows) out.push_back(polys(s, r));
  return Matrix::fromRows(s, out);
}

}  // namespace testing
