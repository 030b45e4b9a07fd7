// Copyright 2026 The wirenl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wirenl/wiring.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <string>

#include "wirenl/errors.h"

namespace wirenl {
namespace {

struct Monomial {
  int bit;
  const char* text;
};

// Display order of monomials, matching the usual tabulation:
// 1, a1, a2, a1 a2, x1, a1 x1, a2 x1, a1 a2 x1.
constexpr std::array<Monomial, 8> kEtaOrder = {{{0, "1"},
                                                {4, "a1"},
                                                {1, "a2"},
                                                {5, "a1 a2"},
                                                {2, "x1"},
                                                {6, "a1 x1"},
                                                {3, "a2 x1"},
                                                {7, "a1 a2 x1"}}};
constexpr std::array<Monomial, 4> kGammaOrder = {
    {{0, "1"}, {2, "a1"}, {1, "x1"}, {3, "a1 x1"}}};

// Parses a GF(2) polynomial. Variables map to their exponent bit inside the
// coefficient index. `offset` shifts reported positions.
uint8_t ParsePolynomial(std::string_view text, bool allow_a2, int offset) {
  uint8_t coeffs = 0;
  size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& reason) -> void {
    throw ParseError(0, offset + static_cast<int>(i) + 1, reason);
  };
  skip_space();
  if (i == text.size()) fail("empty polynomial");
  while (true) {
    skip_space();
    // One monomial: factors separated by spaces or '*'.
    int index = 0;
    int factors = 0;
    bool constant_zero = false;
    while (i < text.size() && text[i] != '+') {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*') {
        ++i;
        continue;
      }
      const char c = text[i];
      if (c == '1' || c == '0') {
        constant_zero = constant_zero || c == '0';
        ++i;
      } else if ((c == 'a' || c == 'x') && i + 1 < text.size()) {
        const char n = text[i + 1];
        if (c == 'a' && n == '1') {
          index |= allow_a2 ? 4 : 2;
        } else if (c == 'x' && n == '1') {
          index |= allow_a2 ? 2 : 1;
        } else if (c == 'a' && n == '2' && allow_a2) {
          index |= 1;
        } else {
          fail(std::string("unknown variable '") + c + n + "'");
        }
        i += 2;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      ++factors;
    }
    if (factors == 0) fail("empty monomial");
    if (constant_zero) {
      if (factors != 1) fail("'0' inside a product");
    } else {
      coeffs ^= static_cast<uint8_t>(1u << index);
    }
    if (i == text.size()) break;
    ++i;  // '+'
  }
  return coeffs;
}

std::string FormatPolynomial(uint8_t coeffs, const Monomial* order, int n) {
  std::string out;
  for (int k = 0; k < n; ++k) {
    if (!(coeffs >> order[k].bit & 1)) continue;
    if (!out.empty()) out += "+";
    out += order[k].text;
  }
  return out.empty() ? "0" : out;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string Direction::ToString() const {
  return std::to_string(first) + "to" + std::to_string(second);
}

Direction Direction::Parse(std::string_view text) {
  const std::string t = Trim(text);
  if (t.size() == 4 && t.substr(1, 2) == "to" && t[0] >= '1' && t[0] <= '3' &&
      t[3] >= '1' && t[3] <= '3' && t[0] != t[3]) {
    return {t[0] - '0', t[3] - '0'};
  }
  throw ParseError(0, 1, "direction must look like 1to2");
}

int EvalGamma(uint8_t gamma, int a1, int x1) {
  int v = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if ((gamma >> (2 * i + j) & 1) && (a1 || !i) && (x1 || !j)) v ^= 1;
  return v;
}

int EvalEta(uint8_t eta, int a1, int x1, int a2) {
  int v = 0;
  for (int m = 0; m < 8; ++m) {
    if (!(eta >> m & 1)) continue;
    const int i = m >> 2 & 1, j = m >> 1 & 1, k = m & 1;
    if ((a1 || !i) && (x1 || !j) && (a2 || !k)) v ^= 1;
  }
  return v;
}

int EvalMode(InputMode mode, int x) {
  switch (mode) {
    case InputMode::kIdentity:
      return x;
    case InputMode::kNegated:
      return x ^ 1;
    case InputMode::kZero:
      return 0;
    case InputMode::kOne:
      return 1;
  }
  return x;
}

uint8_t AnfToTruthTable3(uint8_t anf) {
  uint8_t tt = 0;
  for (int p = 0; p < 8; ++p) {
    if (EvalEta(anf, p >> 2 & 1, p >> 1 & 1, p & 1)) tt |= static_cast<uint8_t>(1u << p);
  }
  return tt;
}

uint8_t TruthTableToAnf3(uint8_t tt) {
  // The binary Moebius transform is an involution.
  uint8_t v = tt;
  for (int s = 1; s < 8; s <<= 1) {
    for (int p = 0; p < 8; ++p) {
      if (p & s) v ^= static_cast<uint8_t>((v >> (p ^ s) & 1) << p);
    }
  }
  return v;
}

Vec16 ApplyLinear(const Wiring& w, const Vec64& p) {
  const int f = w.direction.first;
  const int s = w.direction.second;
  const int iso = w.direction.isolated();
  Vec16 out;
  for (int xp = 0; xp < 2; ++xp) {
    const int xf = EvalMode(w.mode, xp);
    for (int xi = 0; xi < 2; ++xi) {
      for (int af = 0; af < 2; ++af) {
        const int xs = EvalGamma(w.gamma, af, xp);
        for (int as = 0; as < 2; ++as) {
          const int ap = EvalEta(w.eta, af, xp, as);
          for (int ai = 0; ai < 2; ++ai) {
            std::array<int, 3> a{}, x{};
            a[f - 1] = af;
            a[s - 1] = as;
            a[iso - 1] = ai;
            x[f - 1] = xf;
            x[s - 1] = xs;
            x[iso - 1] = xi;
            out[Index2(ap, ai, xp, xi)] += p[Index3(a, x)];
          }
        }
      }
    }
  }
  return out;
}

Box2 Apply(const Wiring& w, const Box3& b) { return Box2(ApplyLinear(w, b.table())); }

std::vector<Wiring> CanonicalWirings(Direction d) {
  std::vector<Wiring> out;
  out.reserve(256);
  for (int eta = 0; eta < 256; ++eta) {
    out.push_back({d, InputMode::kIdentity, 0b0100, static_cast<uint8_t>(eta)});
  }
  return out;
}

std::vector<Wiring> FullWirings(Direction d) {
  std::vector<Wiring> out;
  out.reserve(4 * 16 * 256);
  // Extensional key: first-party input per x', second-party input per
  // (a1, x'), output per (a1, x', a2).
  std::set<uint32_t> seen;
  for (int mode = 0; mode < 4; ++mode) {
    for (int gamma = 0; gamma < 16; ++gamma) {
      for (int eta = 0; eta < 256; ++eta) {
        Wiring w{d, static_cast<InputMode>(mode), static_cast<uint8_t>(gamma),
                 static_cast<uint8_t>(eta)};
        uint32_t key = 0;
        for (int xp = 0; xp < 2; ++xp) key = key << 1 | EvalMode(w.mode, xp);
        for (int a1 = 0; a1 < 2; ++a1)
          for (int xp = 0; xp < 2; ++xp) key = key << 1 | EvalGamma(w.gamma, a1, xp);
        key = key << 8 | AnfToTruthTable3(w.eta);
        if (seen.insert(key).second) out.push_back(w);
      }
    }
  }
  return out;
}

std::vector<Wiring> RelabelOrbit(const Wiring& w) {
  const uint8_t tt = AnfToTruthTable3(w.eta);
  std::vector<Wiring> out;
  for (int c = 0; c < 2; ++c) {
    for (int dd = 0; dd < 2; ++dd) {
      uint8_t image = 0;
      for (int p = 0; p < 8; ++p) {
        const int a1 = p >> 2 & 1;
        const int src = p ^ (c ^ (dd & a1));
        if (tt >> src & 1) image |= static_cast<uint8_t>(1u << p);
      }
      Wiring r = w;
      r.eta = TruthTableToAnf3(image);
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Wiring& a, const Wiring& b) { return a.eta < b.eta; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string FormatGamma(uint8_t gamma) {
  return FormatPolynomial(gamma, kGammaOrder.data(), 4);
}

std::string FormatEta(uint8_t eta) { return FormatPolynomial(eta, kEtaOrder.data(), 8); }

uint8_t ParseGamma(std::string_view text) { return ParsePolynomial(text, false, 0); }

uint8_t ParseEta(std::string_view text) { return ParsePolynomial(text, true, 0); }

Wiring ParseWiring(std::string_view text, Direction d) {
  Wiring w;
  w.direction = d;
  if (text.find('=') == std::string_view::npos) {
    w.eta = ParsePolynomial(text, true, 0);
    return w;
  }
  bool have_gamma = false;
  bool have_eta = false;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view clause = text.substr(start, end - start);
    const size_t eq = clause.find('=');
    const int base = static_cast<int>(start);
    if (Trim(clause).empty()) {
      start = end + 1;
      continue;
    }
    if (eq == std::string_view::npos) throw ParseError(0, base + 1, "missing '='");
    const std::string lhs = Trim(clause.substr(0, eq));
    std::string_view rhs = clause.substr(eq + 1);
    const int rhs_offset = base + static_cast<int>(eq) + 1;
    if (lhs == "x1") {
      std::string r;
      for (char c : rhs) {
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
      }
      if (r == "x'") {
        w.mode = InputMode::kIdentity;
      } else if (r == "x'+1" || r == "1+x'") {
        w.mode = InputMode::kNegated;
      } else if (r == "0") {
        w.mode = InputMode::kZero;
      } else if (r == "1") {
        w.mode = InputMode::kOne;
      } else {
        throw ParseError(0, rhs_offset + 1, "x1 must be x', x'+1, 0 or 1");
      }
    } else if (lhs == "x2") {
      w.gamma = ParsePolynomial(rhs, false, rhs_offset);
      have_gamma = true;
    } else if (lhs == "out") {
      w.eta = ParsePolynomial(rhs, true, rhs_offset);
      have_eta = true;
    } else {
      throw ParseError(0, base + 1, "unknown clause '" + lhs + "'");
    }
    start = end + 1;
  }
  if (!have_eta) throw ParseError(0, 0, "missing 'out=' clause");
  if (!have_gamma) w.gamma = 0b0100;
  return w;
}

std::string FormatWiring(const Wiring& w) {
  std::string out;
  switch (w.mode) {
    case InputMode::kIdentity:
      break;
    case InputMode::kNegated:
      out += "x1=x'+1; ";
      break;
    case InputMode::kZero:
      out += "x1=0; ";
      break;
    case InputMode::kOne:
      out += "x1=1; ";
      break;
  }
  out += "x2=" + FormatGamma(w.gamma) + "; out=" + FormatEta(w.eta);
  return out;
}

}  // namespace wirenl
