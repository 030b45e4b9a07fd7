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

#include "wirenl/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "wirenl/bell.h"
#include "wirenl/box.h"
#include "wirenl/classes.h"
#include "wirenl/errors.h"
#include "wirenl/fixtures.h"
#include "wirenl/quantify.h"
#include "wirenl/wiring.h"

namespace wirenl {
namespace {

constexpr const char* kGrammar = R"(Input grammar:
  box file     format: correlators | probabilities
               NAME = p/q                      (26 correlators A0 .. ABC111)
               p(a1a2a3|x1x2x3) = p/q          (64 entries)
               '#' starts a comment
  --class      three letters from N, T, S for cuts 1:23, 2:13, 3:12 (e.g. TTS);
               classify also accepts T2, Svetlichny, or one letter with --cut
  --cut        1:23 | 2:13 | 3:12
  --direction  1to2 | 2to1 | 1to3 | 3to1 | 2to3 | 3to2
  --wiring     [x1=x'|x'+1|0|1;] x2=<poly in 1,a1,x1>; out=<poly in 1,a1,x1,a2>
               or a bare output polynomial, meaning x2=a1
)";

std::string Q(const Rational& q) { return ToString(q); }

std::string Member(bool m) { return m ? "member" : "NOT member"; }

std::string LetterName(Letter l) {
  switch (l) {
    case Letter::kN:
      return "NSBL";
    case Letter::kT:
      return "TOBL";
    case Letter::kS:
      return "S";
  }
  return "?";
}

Box3 LoadBox(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot read box file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseBox(ss.str());
}

// Direction from --direction, else the lower-to-higher order of --cut, else
// 1to2. Both given must agree.
Direction ResolveDirection(const std::string& direction, const std::string& cut) {
  std::optional<Cut> c;
  if (!cut.empty()) c = Cut::Parse(cut);
  if (!direction.empty()) {
    const Direction d = Direction::Parse(direction);
    if (c && c->isolated != d.isolated()) {
      throw ParseError(0, 0, "direction " + direction + " does not act across cut " + cut);
    }
    return d;
  }
  if (c) return Direction{c->lower(), c->higher()};
  return Direction{1, 2};
}

void PrintBox2(std::ostream& out, const Box2& b) {
  for (int i = 0; i < 16; ++i) {
    out << "  p(" << (i >> 3 & 1) << (i >> 2 & 1) << "|" << (i >> 1 & 1) << (i & 1)
        << ") = " << Q(b.at(i)) << "\n";
  }
}

// Machine-friendly wiring text: no spaces.
std::string Compact(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

std::string CompactWiring(const Wiring& w) {
  std::string s = FormatWiring(w);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ') {
      // Separator after ';' is dropped; products become '*'.
      if (i > 0 && s[i - 1] == ';') continue;
      out += '*';
    } else {
      out += s[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reproduction report.

class ReportBuilder {
 public:
  void Add(std::string table, std::string cell, std::string computed, std::string published) {
    std::string status = computed == published ? "PASS" : "FAIL";
    report_.cells.push_back({std::move(table), std::move(cell), std::move(computed),
                             std::move(published), std::move(status)});
  }
  // A cell whose published value is known to disagree with the computation.
  void AddFlagged(std::string table, std::string cell, std::string computed,
                  std::string published) {
    std::string status = computed == published ? "PASS" : "FLAG";
    report_.cells.push_back({std::move(table), std::move(cell), std::move(computed),
                             std::move(published), std::move(status)});
  }
  Report Take() { return std::move(report_); }

 private:
  Report report_;
};

Rational BestChsh(const Wiring& w, const Box3& b) { return MaxChsh(Apply(w, b)).first; }

// The published wiring if it attains `target` on `b`; otherwise the first
// wiring of its relabeling orbit that does, then the first canonical wiring.
std::pair<Wiring, bool> AttainingWiring(const Wiring& published, const Box3& b,
                                        const Rational& target) {
  if (BestChsh(published, b) == target) return {published, true};
  for (const Wiring& w : RelabelOrbit(published)) {
    if (BestChsh(w, b) == target) return {w, false};
  }
  for (const Wiring& w : CanonicalWirings(published.direction)) {
    if (BestChsh(w, b) == target) return {w, false};
  }
  return {published, false};
}

struct RepRow {
  const char* box;
  const char* eta;  // as printed, 'x' standing for x1
  const char* wn;
  const char* upper;
  const char* cost;
  const char* robustness;
  bool robustness_flagged;
};

void Representatives(ReportBuilder& rb, const std::string& table, const ClassSpec& bound_spec,
                     const std::vector<RepRow>& rows) {
  const Direction d{1, 2};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RepRow& row = rows[k];
    const std::string prefix = "box" + std::to_string(k + 1) + ".";
    const Box3 b = FixtureBox(row.box);
    const std::string printed =
        std::regex_replace(std::string(row.eta), std::regex("x(?![0-9])"), "x1");
    const Wiring published = ParseWiring(printed, d);
    const Rational wn = ParseRational(row.wn);
    const auto [w, as_printed] = AttainingWiring(published, b, wn);
    const std::string published_text = "x2=a1;out=" + Compact(row.eta);
    if (as_printed) {
      rb.Add(table, prefix + "wiring", published_text, published_text);
    } else {
      rb.AddFlagged(table, prefix + "wiring", CompactWiring(w), published_text);
    }
    rb.Add(table, prefix + "WN", Q(BestChsh(w, b)), row.wn);
    rb.Add(table, prefix + "upper", Q(SignalWeightBound(b, d).value), row.upper);
    rb.Add(table, prefix + "cost", Q(CostLowerBound(b, bound_spec).value), row.cost);
    const std::string r = Q(RobustnessLowerBound(b, bound_spec).value);
    if (row.robustness_flagged) {
      rb.AddFlagged(table, prefix + "robustness", r, row.robustness);
    } else {
      rb.Add(table, prefix + "robustness", r, row.robustness);
    }
  }
}

void WiringTableCells(ReportBuilder& rb, const std::string& label, const MwnClassResult& m) {
  const std::string table = "wn-" + label;
  std::map<int, Rational> expected;
  for (const WiringTableRow& row : WiringTable(label)) {
    rb.Add(table, "row" + std::to_string(row.number), Q(m.records[row.eta].wn), Q(row.wn));
    for (const Wiring& w : RelabelOrbit(m.records[row.eta].wiring)) expected[w.eta] = row.wn;
  }
  int images = 0, absent_nonzero = 0;
  for (const WNRecord& r : m.records) {
    const auto it = expected.find(r.wiring.eta);
    if (it == expected.end()) {
      absent_nonzero += sgn(r.wn) != 0;
    } else {
      images += r.wn == it->second;
    }
  }
  rb.Add(table, "orbit-images", std::to_string(images), std::to_string(expected.size()));
  rb.Add(table, "absent-nonzero", std::to_string(absent_nonzero), "0");
}

}  // namespace

bool Report::ok() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const ReportCell& c) { return c.status == "PASS"; });
}

Report ReproduceTables() {
  ReportBuilder rb;
  const Direction d12{1, 2};
  const Cut c3{3};

  {
    const Box3 b = FixtureBox("trilocal.box");
    rb.Add("trilocal", "T2", MemberT2(b).member ? "member" : "non-member", "member");
    rb.Add("trilocal", "TOBL-3:12", MemberTOBL(b, c3).member ? "member" : "non-member",
           "non-member");
    const Box2 e = Apply(ParseWiring("x2=a1; out=a2", d12), b);
    const auto [value, idx] = MaxChsh(e);
    rb.Add("trilocal", "beta-max", Q(value), "7/2");
    rb.Add("trilocal", "beta-max-index", idx.ToString(), "000");
    rb.Add("trilocal", "beta000", Q(Chsh(e, {})), "7/2");
  }
  {
    const Box3 b = FixtureBox("tight_bound.box");
    const Wiring w = ParseWiring("x2=a1; out=a2", d12);
    const BoundRecord bound = SignalWeightBound(b, d12);
    const MwnBoxResult mwn = MwnBox(b, d12);
    rb.Add("tight-bound", "S-3:12", MemberS(b, c3).member ? "member" : "non-member", "member");
    rb.Add("tight-bound", "min-weight", Q(bound.min_weight), "1/2");
    rb.Add("tight-bound", "bound", Q(bound.value), "3");
    rb.Add("tight-bound", "mwn-box", Q(mwn.value), "3");
    rb.Add("tight-bound", "beta-at-wiring", Q(BestChsh(w, b)), "3");
  }

  struct ClassRow {
    const char* spec;
    const char* mwn;
    const char* second;
    const char* table;  // wiring table label or empty
  };
  const std::vector<ClassRow> classes = {{"NNS", "3", "14/5", "NNS"},
                                         {"NTS", "3", "14/5", ""},
                                         {"TTS", "3", "38/13", "TTS"},
                                         {"NSS", "4", "3", "NSS"},
                                         {"TSS", "4", "3", "TSS"}};
  std::vector<std::pair<std::string, MwnClassResult>> results;
  for (const ClassRow& c : classes) {
    MwnClassResult m = MwnClass(ClassSpec::Parse(c.spec), d12);
    rb.Add("mwn-classes", std::string(c.spec) + ".MWN", Q(m.mwn), c.mwn);
    rb.Add("mwn-classes", std::string(c.spec) + ".second", Q(m.second_tier), c.second);
    if (*c.table) results.emplace_back(c.table, std::move(m));
  }

  // Bounds from the wired cut 3:12 need a wiring-closed letter there.
  Representatives(rb, "tts-reps", ClassSpec::Parse("TTT"),
                  {{"tts_box1.box", "a2", "3", "3", "1/2", "1/7", false},
                   {"tts_box2.box", "a2+a1 a2 x1", "38/13", "50/13", "6/13", "2/15", false}});
  Representatives(rb, "nns-reps", ClassSpec::Parse("NNT"),
                  {{"nns_box1.box", "a2", "3", "3", "1/2", "1/7", false},
                   {"nns_box2.box", "a1+a1 a2 x", "14/5", "18/5", "2/5", "1/17", true}});

  for (const auto& [label, m] : results) WiringTableCells(rb, label, m);
  return rb.Take();
}

std::string FormatReport(const Report& report, bool machine) {
  std::ostringstream out;
  if (machine) {
    for (const auto& c : report.cells) {
      out << c.table << ' ' << c.cell << ' ' << c.computed << ' ' << c.published << ' '
          << c.status << '\n';
    }
    return out.str();
  }
  std::array<std::size_t, 4> width{5, 4, 8, 9};
  for (const auto& c : report.cells) {
    width[0] = std::max(width[0], c.table.size());
    width[1] = std::max(width[1], c.cell.size());
    width[2] = std::max(width[2], c.computed.size());
    width[3] = std::max(width[3], c.published.size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c,
                  const std::string& d, const std::string& e) {
    out << a << std::string(width[0] - a.size() + 2, ' ') << b
        << std::string(width[1] - b.size() + 2, ' ') << c
        << std::string(width[2] - c.size() + 2, ' ') << d
        << std::string(width[3] - d.size() + 2, ' ') << e << '\n';
  };
  line("table", "cell", "computed", "published", "status");
  int pass = 0, fail = 0, flag = 0;
  for (const auto& c : report.cells) {
    line(c.table, c.cell, c.computed, c.published, c.status);
    pass += c.status == "PASS";
    fail += c.status == "FAIL";
    flag += c.status == "FLAG";
  }
  out << "\n" << pass << " PASS, " << fail << " FAIL, " << flag << " FLAG\n";
  return out.str();
}

int Run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wiring-induced non-locality of tripartite boxes"};
  app.require_subcommand(1);
  app.footer(kGrammar);

  std::string box, cls, cut, direction, wiring, chsh = "all", format = "text";
  bool all_wirings = false, certificate = false;

  auto* check = app.add_subcommand("check", "Validate a box and test no-signaling");
  check->add_option("--box", box, "Box file")->required();

  auto* classify = app.add_subcommand("classify", "Class membership by LP");
  classify->add_option("--box", box, "Box file")->required();
  classify->add_option("--class", cls, "Class spec, T2, Svetlichny or a letter")->required();
  classify->add_option("--cut", cut, "Cut for a single letter or the TOBL check");
  classify->add_flag("--certificate", certificate, "Print decompositions");

  auto* wire = app.add_subcommand("wire", "Apply a wiring and evaluate CHSH values");
  wire->add_option("--box", box, "Box file")->required();
  wire->add_option("--wiring", wiring, "Wiring text")->required();
  wire->add_option("--direction", direction, "Wired pair and order");
  wire->add_option("--chsh", chsh, "all or an index rst such as 010");

  auto* wn = app.add_subcommand("wn", "Class-level value of one wiring");
  wn->add_option("--class", cls, "Class spec")->required();
  wn->add_option("--wiring", wiring, "Wiring text")->required();
  wn->add_option("--direction", direction, "Wired pair and order");
  wn->add_option("--cut", cut, "Wired cut");
  wn->add_flag("--certificate", certificate, "Print decompositions of the witness");

  auto* mwn_class = app.add_subcommand("mwn-class", "Maximum class-level value over wirings");
  mwn_class->add_option("--class", cls, "Class spec")->required();
  mwn_class->add_option("--cut", cut, "Wired cut");
  mwn_class->add_option("--direction", direction, "Wired pair and order");
  mwn_class->add_flag("--all-wirings", all_wirings, "List every canonical wiring");

  auto* mwn_box = app.add_subcommand("mwn-box", "Maximum over wirings for one box");
  mwn_box->add_option("--box", box, "Box file")->required();
  mwn_box->add_option("--cut", cut, "Wired cut");
  mwn_box->add_option("--direction", direction, "Wired pair and order");
  mwn_box->add_flag("--all-wirings", all_wirings, "List every full wiring");

  auto* bound = app.add_subcommand("bound", "Signaling-weight upper bound");
  bound->add_option("--box", box, "Box file")->required();
  bound->add_option("--cut", cut, "Wired cut");
  bound->add_option("--direction", direction, "Wired pair and order");
  bound->add_flag("--certificate", certificate, "Print the decomposition");

  auto* monotones = app.add_subcommand("monotones", "Non-locality cost and robustness");
  monotones->add_option("--box", box, "Box file")->required();
  monotones->add_option("--class", cls, "Class spec with an N or T letter")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Recompute the published values");
  reproduce->add_option("--format", format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << kGrammar;
    return 1;
  }

  try {
    if (check->parsed()) {
      const Box3 b = LoadBox(box);
      const NsReport ns = CheckNonsignaling(b);
      out << "valid box\n";
      if (ns.ok()) {
        out << "non-signaling: yes\n";
      } else {
        out << "non-signaling: no\n" << ns.ToString();
      }
    } else if (classify->parsed()) {
      const Box3 b = LoadBox(box);
      auto print_decomposition = [&](const Membership& m) {
        if (certificate && m.decomposition) out << m.decomposition->ToText();
      };
      if (cls == "T2" || cls == "Svetlichny") {
        const Cut c = cut.empty() ? Cut{3} : Cut::Parse(cut);
        const Membership m = cls == "T2" ? MemberT2(b) : MemberSvetlichny(b);
        const Membership t = MemberTOBL(b, c);
        out << cls << ": " << Member(m.member) << "; TOBL cut " << c.ToString() << ": "
            << Member(t.member) << "\n";
        print_decomposition(m);
      } else if (cls.size() == 1) {
        if (cut.empty()) throw ParseError(0, 0, "a single letter needs --cut");
        const Cut c = Cut::Parse(cut);
        const Letter l = ClassSpec::Parse(cls + cls + cls).letters[0];
        const Membership m = MemberLetter(b, c, l);
        out << LetterName(l) << " cut " << c.ToString() << ": " << Member(m.member) << "\n";
        print_decomposition(m);
      } else {
        const ClassSpec spec = ClassSpec::Parse(cls);
        const ClassReport r = MemberClass(b, spec);
        out << spec.ToString() << ": " << Member(r.member) << "\n";
        for (int k = 1; k <= 3; ++k) {
          out << LetterName(spec.letters[k - 1]) << " cut " << Cut{k}.ToString() << ": "
              << Member(r.cuts[k - 1].member) << "\n";
          print_decomposition(r.cuts[k - 1]);
        }
      }
    } else if (wire->parsed()) {
      const Box3 b = LoadBox(box);
      const Direction d = ResolveDirection(direction, "");
      const Wiring w = ParseWiring(wiring, d);
      const Box2 e = Apply(w, b);
      out << "wiring " << d.ToString() << ": " << FormatWiring(w) << "\n";
      out << "effective box p(a' a" << d.isolated() << " | x' x" << d.isolated() << "):\n";
      PrintBox2(out, e);
      if (chsh == "all") {
        for (int k = 0; k < 8; ++k) {
          const ChshIndex idx = ChshIndex::FromFlat(k);
          out << "beta_" << idx.ToString() << " = " << Q(Chsh(e, idx)) << "\n";
        }
        const auto [value, idx] = MaxChsh(e);
        out << "max: beta_" << idx.ToString() << " = " << Q(value) << "\n";
      } else {
        if (chsh.size() != 3 || chsh.find_first_not_of("01") != std::string::npos) {
          throw ParseError(0, 0, "--chsh expects all or three bits rst");
        }
        const ChshIndex idx{chsh[0] - '0', chsh[1] - '0', chsh[2] - '0'};
        out << "beta_" << idx.ToString() << " = " << Q(Chsh(e, idx)) << "\n";
      }
    } else if (wn->parsed()) {
      const ClassSpec spec = ClassSpec::Parse(cls);
      const Direction d = ResolveDirection(direction, cut);
      const WNRecord r = WnClass(spec, ParseWiring(wiring, d));
      out << "class " << spec.ToString() << ", wiring " << d.ToString() << ": "
          << FormatWiring(r.wiring) << "\n";
      out << "optimum = " << Q(r.optimum) << "\n";
      out << "WN = " << Q(r.wn) << "\n";
      out << "witness:\n" << SerializeBox(r.witness, BoxFormat::kCorrelators);
      if (certificate) {
        for (int k = 0; k < 3; ++k) {
          out << "decomposition cut " << Cut{k + 1}.ToString() << ":\n"
              << r.certificates[k].ToText();
        }
      }
    } else if (mwn_class->parsed()) {
      const ClassSpec spec = ClassSpec::Parse(cls);
      const Direction d = ResolveDirection(direction, cut);
      const MwnClassResult r = MwnClass(spec, d);
      out << "MWN = " << Q(r.mwn) << "\n";
      out << "witness wiring: " << FormatWiring(r.witness) << "\n";
      out << "second tier = " << Q(r.second_tier) << "\n";
      if (all_wirings) {
        for (const auto& rec : r.records) {
          out << "out=" << FormatEta(rec.wiring.eta) << "  WN = " << Q(rec.wn)
              << "  optimum = " << Q(rec.optimum);
          if (rec.derived_from) out << "  (relabeled from out=" << FormatEta(rec.derived_from->eta) << ")";
          out << "\n";
        }
      }
    } else if (mwn_box->parsed()) {
      const Box3 b = LoadBox(box);
      const Direction d = ResolveDirection(direction, cut);
      const MwnBoxResult r = MwnBox(b, d);
      out << "MWN = " << Q(r.value) << "\n";
      out << "wiring " << d.ToString() << ": " << FormatWiring(r.wiring) << "\n";
      out << "chsh: beta_" << r.chsh.ToString() << "\n";
      out << "violation: " << (r.violation ? "yes" : "no") << "\n";
      if (all_wirings) {
        for (const Wiring& w : FullWirings(d)) {
          const auto [value, idx] = MaxChsh(Apply(w, b));
          out << FormatWiring(w) << "  beta_" << idx.ToString() << " = " << Q(value) << "\n";
        }
      }
    } else if (bound->parsed()) {
      const Box3 b = LoadBox(box);
      const Direction d = ResolveDirection(direction, cut);
      const BoundRecord r = SignalWeightBound(b, d);
      out << "bound = " << Q(r.value) << "\n";
      out << "min signaling weight = " << Q(r.min_weight) << "\n";
      if (certificate) out << r.decomposition->ToText();
    } else if (monotones->parsed()) {
      const Box3 b = LoadBox(box);
      const ClassSpec spec = ClassSpec::Parse(cls);
      const BoundRecord c = CostLowerBound(b, spec);
      const BoundRecord r = RobustnessLowerBound(b, spec);
      out << "cost = " << Q(Cost3Exact(b, spec)) << "\n";
      out << "cost lower bound = " << Q(c.value) << "\n";
      out << "robustness = " << Q(Robustness3Exact(b, spec)) << "\n";
      out << "robustness lower bound = " << Q(r.value) << "\n";
      out << "beta = " << Q(c.beta) << " at " << c.direction.ToString() << ": "
          << FormatWiring(*c.wiring) << ", beta_" << c.chsh->ToString() << "\n";
    } else if (reproduce->parsed()) {
      const Report report = ReproduceTables();
      out << FormatReport(report, format == "machine");
      return report.ok() ? 0 : 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace wirenl
