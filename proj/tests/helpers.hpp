#pragma once

#include <string>

#include "wittkit/check.hpp"
#include "wittkit/ring.hpp"
#include "wittkit/witt.hpp"

namespace th {

using namespace wittkit;

inline CoeffRing fp(unsigned p) { return CoeffRing::fp(p); }
inline CoeffRing zz() { return CoeffRing::integers(); }

inline MultiPoly poly(CoeffRing ring, unsigned vars, const std::string& text) {
  return MultiPoly::parse(ring, vars, text);
}

inline CtxPtr ctx(unsigned p, unsigned vars) {
  return PolyRingCtx::make(CoeffRing::fp(p), vars);
}

inline WittVector wv(const CtxPtr& c, const std::string& text) {
  return WittVector::parse(text, c);
}

}  // namespace th
