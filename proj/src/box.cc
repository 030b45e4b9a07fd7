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

#include "wirenl/box.h"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wirenl/errors.h"

namespace wirenl {
namespace {

// Correlator convention of the reference tables: output bit a counts as
// (-1)^(a+1) and the correlator labelled x belongs to input 1 - x.
int Sign(int bit) { return bit ? 1 : -1; }
int Label(int input) { return 1 - input; }

template <size_t N>
void Validate(const std::array<Rational, N>& p, int inputs) {
  const int outputs = static_cast<int>(N) / inputs;
  for (size_t i = 0; i < N; ++i) {
    if (sgn(p[i]) < 0) {
      throw InvalidBox("negative entry at index " + std::to_string(i) + ": " +
                       ToString(p[i]));
    }
  }
  for (int x = 0; x < inputs; ++x) {
    Rational sum = 0;
    for (int a = 0; a < outputs; ++a) sum += p[a * inputs + x];
    if (sum != 1) {
      throw InvalidBox("input " + std::to_string(x) + " sums to " + ToString(sum));
    }
  }
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string StripSpaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

Box3::Box3() { p_.fill(Rational(1, 8)); }

Box3::Box3(const Vec64& table) : p_(table) { Validate(p_, 8); }

Box2::Box2() { p_.fill(Rational(1, 4)); }

Box2::Box2(const Vec16& table) : p_(table) { Validate(p_, 4); }

std::string ToString(Signaling s) {
  switch (s) {
    case Signaling::kNone:
      return "none";
    case Signaling::kFirstToSecond:
      return "1->2";
    case Signaling::kSecondToFirst:
      return "2->1";
    case Signaling::kBoth:
      return "both";
  }
  return "?";
}

Signaling Box2::signaling() const {
  bool first_to_second = false;
  bool second_to_first = false;
  for (int o = 0; o < 2; ++o) {
    for (int in = 0; in < 2; ++in) {
      // Marginal of the first party must not depend on y.
      if (p_[Index2(o, 0, in, 0)] + p_[Index2(o, 1, in, 0)] !=
          p_[Index2(o, 0, in, 1)] + p_[Index2(o, 1, in, 1)]) {
        second_to_first = true;
      }
      if (p_[Index2(0, o, 0, in)] + p_[Index2(1, o, 0, in)] !=
          p_[Index2(0, o, 1, in)] + p_[Index2(1, o, 1, in)]) {
        first_to_second = true;
      }
    }
  }
  if (first_to_second && second_to_first) return Signaling::kBoth;
  if (first_to_second) return Signaling::kFirstToSecond;
  if (second_to_first) return Signaling::kSecondToFirst;
  return Signaling::kNone;
}

Box3 Mix(const Box3& a, const Box3& b, const Rational& w) {
  Vec64 t;
  for (int i = 0; i < 64; ++i) t[i] = w * a.at(i) + (1 - w) * b.at(i);
  return Box3(t);
}

Box2 Mix(const Box2& a, const Box2& b, const Rational& w) {
  Vec16 t;
  for (int i = 0; i < 16; ++i) t[i] = w * a.at(i) + (1 - w) * b.at(i);
  return Box2(t);
}

Vec4 DeterministicLocal(int f0, int f1) {
  Vec4 v;
  for (int a = 0; a < 2; ++a) {
    v[a * 2 + 0] = (a == f0) ? 1 : 0;
    v[a * 2 + 1] = (a == f1) ? 1 : 0;
  }
  return v;
}

Box3 Product(int isolated, const Vec4& local, const Box2& pair) {
  const int lo = isolated == 1 ? 2 : 1;
  const int hi = isolated == 3 ? 2 : 3;
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    t[i] = local[OutputOf(i, isolated) * 2 + InputOf(i, isolated)] *
           pair(OutputOf(i, lo), OutputOf(i, hi), InputOf(i, lo), InputOf(i, hi));
  }
  return Box3(t);
}

Box3 Product(const Vec4& p1, const Vec4& p2, const Vec4& p3) {
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    t[i] = p1[OutputOf(i, 1) * 2 + InputOf(i, 1)] *
           p2[OutputOf(i, 2) * 2 + InputOf(i, 2)] *
           p3[OutputOf(i, 3) * 2 + InputOf(i, 3)];
  }
  return Box3(t);
}

Box2 Product(const Vec4& p1, const Vec4& p2) {
  Vec16 t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          t[Index2(a, b, x, y)] = p1[a * 2 + x] * p2[b * 2 + y];
  return Box2(t);
}

const std::array<std::string, 26>& Correlators3::Names() {
  static const std::array<std::string, 26> names = [] {
    std::array<std::string, 26> n;
    int k = 0;
    for (const char* p : {"A", "B", "C"})
      for (int x = 0; x < 2; ++x) n[k++] = p + std::to_string(x);
    for (const char* p : {"AB", "AC", "BC"})
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          n[k++] = p + std::to_string(x) + std::to_string(y);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
          n[k++] = "ABC" + std::to_string(x) + std::to_string(y) + std::to_string(z);
    return n;
  }();
  return names;
}

int Correlators3::IndexOf(std::string_view name) {
  const auto& names = Names();
  for (int i = 0; i < 26; ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

Box3 FromCorrelators(const Correlators3& c) {
  Correlators3 m = c;
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    const int s1 = Sign(OutputOf(i, 1));
    const int s2 = Sign(OutputOf(i, 2));
    const int s3 = Sign(OutputOf(i, 3));
    const int x = Label(InputOf(i, 1)), y = Label(InputOf(i, 2)), z = Label(InputOf(i, 3));
    Rational v = 1;
    v += s1 * m.A(x) + s2 * m.B(y) + s3 * m.C(z);
    v += s1 * s2 * m.AB(x, y) + s1 * s3 * m.AC(x, z) + s2 * s3 * m.BC(y, z);
    v += s1 * s2 * s3 * m.ABC(x, y, z);
    t[i] = v / 8;
    if (sgn(t[i]) < 0) {
      throw NegativeProbability(i, "correlators give negative probability " +
                                       ToString(t[i]) + " at index " +
                                       std::to_string(i));
    }
  }
  return Box3(t);
}

Correlators3 ToCorrelators(const Box3& b) {
  Correlators3 c;
  for (auto& v : c.values) v = 0;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int a3 = 0; a3 < 2; ++a3) {
        const int s1 = Sign(a1), s2 = Sign(a2), s3 = Sign(a3);
        // Marginal correlators are read with the traced parties at input 0.
        for (int x = 0; x < 2; ++x) {
          const int lx = Label(x);
          c.A(lx) += s1 * b(a1, a2, a3, x, 0, 0);
          c.B(lx) += s2 * b(a1, a2, a3, 0, x, 0);
          c.C(lx) += s3 * b(a1, a2, a3, 0, 0, x);
          for (int y = 0; y < 2; ++y) {
            const int ly = Label(y);
            c.AB(lx, ly) += s1 * s2 * b(a1, a2, a3, x, y, 0);
            c.AC(lx, ly) += s1 * s3 * b(a1, a2, a3, x, 0, y);
            c.BC(lx, ly) += s2 * s3 * b(a1, a2, a3, 0, x, y);
            for (int z = 0; z < 2; ++z) {
              c.ABC(lx, ly, Label(z)) += s1 * s2 * s3 * b(a1, a2, a3, x, y, z);
            }
          }
        }
      }
  return c;
}

std::string NsReport::ToString() const {
  if (ok()) return "non-signaling";
  std::ostringstream out;
  for (const auto& v : violations) {
    out << "party " << v.party << ": outputs a" << v.others[0] << "=" << v.outputs[0]
        << " a" << v.others[1] << "=" << v.outputs[1] << " inputs x" << v.others[0]
        << "=" << v.inputs[0] << " x" << v.others[1] << "=" << v.inputs[1] << ": "
        << wirenl::ToString(v.at_input0) << " != " << wirenl::ToString(v.at_input1)
        << "\n";
  }
  return out.str();
}

NsReport CheckNonsignaling(const Box3& b) {
  NsReport report;
  for (int k = 1; k <= 3; ++k) {
    const int i = k == 1 ? 2 : 1;
    const int j = k == 3 ? 2 : 3;
    for (int ai = 0; ai < 2; ++ai)
      for (int aj = 0; aj < 2; ++aj)
        for (int xi = 0; xi < 2; ++xi)
          for (int xj = 0; xj < 2; ++xj) {
            Rational sums[2];
            for (int xk = 0; xk < 2; ++xk) {
              for (int ak = 0; ak < 2; ++ak) {
                std::array<int, 3> a{}, x{};
                a[i - 1] = ai;
                a[j - 1] = aj;
                a[k - 1] = ak;
                x[i - 1] = xi;
                x[j - 1] = xj;
                x[k - 1] = xk;
                sums[xk] += b.at(Index3(a, x));
              }
            }
            if (sums[0] != sums[1]) {
              report.violations.push_back(
                  {k, {i, j}, {ai, aj}, {xi, xj}, sums[0], sums[1]});
            }
          }
  }
  return report;
}

Box2 Marginal(const Box3& b, int traced_party, int traced_input) {
  const int lo = traced_party == 1 ? 2 : 1;
  const int hi = traced_party == 3 ? 2 : 3;
  Vec16 t;
  for (int i = 0; i < 64; ++i) {
    if (InputOf(i, traced_party) != traced_input) continue;
    t[Index2(OutputOf(i, lo), OutputOf(i, hi), InputOf(i, lo), InputOf(i, hi))] +=
        b.at(i);
  }
  return Box2(t);
}

Box3 Relabel(const Box3& b, const Relabeling3& r) {
  Vec64 t;
  for (int i = 0; i < 64; ++i) {
    std::array<int, 3> a{}, x{};
    for (int k = 0; k < 3; ++k) {
      const int xk = InputOf(i, k + 1);
      const PartyRelabel& pr = r[k];
      a[k] = OutputOf(i, k + 1) ^ pr.out_const ^ (pr.out_input & xk);
      x[k] = xk ^ pr.input_flip;
    }
    t[i] = b.at(Index3(a, x));
  }
  return Box3(t);
}

Box2 Relabel(const Box2& b, const Relabeling2& r) {
  Vec16 t;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int sa = a ^ r[0].out_const ^ (r[0].out_input & x);
          const int sc = c ^ r[1].out_const ^ (r[1].out_input & y);
          t[Index2(a, c, x, y)] = b(sa, sc, x ^ r[0].input_flip, y ^ r[1].input_flip);
        }
  return Box2(t);
}

PartyRelabel Compose(const PartyRelabel& first, const PartyRelabel& second) {
  return {first.input_flip ^ second.input_flip,
          first.out_const ^ second.out_const ^ (first.out_input & second.input_flip),
          first.out_input ^ second.out_input};
}

PartyRelabel Inverse(const PartyRelabel& r) {
  return {r.input_flip, r.out_const ^ (r.out_input & r.input_flip), r.out_input};
}

Box3 ParseBox(std::string_view text) {
  std::vector<std::pair<int, std::string>> lines;
  {
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(start, end - start);
      const size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      std::string trimmed = Trim(line);
      if (!trimmed.empty()) lines.emplace_back(number, trimmed);
      start = end + 1;
    }
  }
  if (lines.empty()) throw ParseError(0, 0, "empty box file");
  const std::string header = StripSpaces(lines[0].second);
  BoxFormat format;
  if (header == "format:correlators") {
    format = BoxFormat::kCorrelators;
  } else if (header == "format:probabilities") {
    format = BoxFormat::kProbabilities;
  } else {
    throw ParseError(lines[0].first, 1,
                     "expected 'format: correlators' or 'format: probabilities'");
  }

  auto split = [](int line_no, const std::string& line) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, 1, "missing '='");
    return std::make_pair(StripSpaces(line.substr(0, eq)), eq);
  };
  auto value = [](int line_no, const std::string& line, size_t eq) {
    try {
      return ParseRational(line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, static_cast<int>(eq) + 2, e.what());
    }
  };

  if (format == BoxFormat::kCorrelators) {
    Correlators3 c;
    std::array<bool, 26> seen{};
    for (size_t n = 1; n < lines.size(); ++n) {
      const auto& [line_no, line] = lines[n];
      auto [name, eq] = split(line_no, line);
      const int k = Correlators3::IndexOf(name);
      if (k < 0) throw ParseError(line_no, 1, "unknown correlator '" + name + "'");
      if (seen[k]) throw ParseError(line_no, 1, "duplicate correlator '" + name + "'");
      seen[k] = true;
      c.values[k] = value(line_no, line, eq);
    }
    for (int k = 0; k < 26; ++k) {
      if (!seen[k]) {
        throw ParseError(0, 0, "missing correlator '" + Correlators3::Names()[k] + "'");
      }
    }
    try {
      return FromCorrelators(c);
    } catch (const NegativeProbability& e) {
      throw ParseError(0, 0, e.what());
    }
  }

  Vec64 t;
  std::array<bool, 64> seen{};
  for (size_t n = 1; n < lines.size(); ++n) {
    const auto& [line_no, line] = lines[n];
    auto [lhs, eq] = split(line_no, line);
    // lhs looks like p(a1a2a3|x1x2x3) once spaces are removed.
    if (lhs.size() != 10 || lhs.substr(0, 2) != "p(" || lhs[5] != '|' || lhs[9] != ')') {
      throw ParseError(line_no, 1, "expected 'p(a1 a2 a3 | x1 x2 x3)'");
    }
    int index = 0;
    for (int pos : {2, 3, 4, 6, 7, 8}) {
      const char ch = lhs[pos];
      if (ch != '0' && ch != '1') throw ParseError(line_no, 1, "indices must be 0 or 1");
      index = index * 2 + (ch - '0');
    }
    if (seen[index]) throw ParseError(line_no, 1, "duplicate entry " + lhs);
    seen[index] = true;
    t[index] = value(line_no, line, eq);
    if (sgn(t[index]) < 0) throw ParseError(line_no, static_cast<int>(eq) + 2, "negative probability");
  }
  for (int i = 0; i < 64; ++i) {
    if (!seen[i]) throw ParseError(0, 0, "missing entry " + std::to_string(i));
  }
  for (int x = 0; x < 8; ++x) {
    Rational sum = 0;
    for (int a = 0; a < 8; ++a) sum += t[a * 8 + x];
    if (sum != 1) {
      throw ParseError(0, 0, "probabilities for input " + std::to_string(x) +
                                 " sum to " + ToString(sum));
    }
  }
  return Box3(t);
}

std::string SerializeBox(const Box3& b, BoxFormat format) {
  std::ostringstream out;
  if (format == BoxFormat::kCorrelators) {
    if (!CheckNonsignaling(b).ok()) {
      throw NotNonsignaling("correlator format needs a non-signaling box");
    }
    const Correlators3 c = ToCorrelators(b);
    out << "format: correlators\n";
    for (int k = 0; k < 26; ++k) {
      out << Correlators3::Names()[k] << " = " << ToString(c.values[k]) << "\n";
    }
    return out.str();
  }
  out << "format: probabilities\n";
  for (int i = 0; i < 64; ++i) {
    out << "p(" << OutputOf(i, 1) << " " << OutputOf(i, 2) << " " << OutputOf(i, 3)
        << " | " << InputOf(i, 1) << " " << InputOf(i, 2) << " " << InputOf(i, 3)
        << ") = " << ToString(b.at(i)) << "\n";
  }
  return out.str();
}

}  // namespace wirenl
