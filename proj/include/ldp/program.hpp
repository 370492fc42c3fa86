#pragma once

#include "ldp/surface.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ldp {

/// A named, resolved germ of an analysis curve (for branch-index queries).
struct NamedGerm {
  std::string name;
  Branch branch;
};

/// Result of executing a blow-up program: the smooth-model configuration
/// plus named germs declared for analysis.
struct BuiltConfiguration {
  Configuration cfg;
  std::vector<std::pair<std::string, std::pair<int, std::vector<int>>>> germDecls;
  // germ name -> (curve, met curve names resolved later against a model)
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

[[noreturn]] inline void parse_fail(int lineNo, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(lineNo) + ": " + msg);
}

}  // namespace detail

/// Parses and executes a blow-up program (see README for the format).
/// Lines:
///   surface P2 | local
///   curve NAME [degree D]
///   point NAME on C1 C2 ... [contact A:B=n ...] [cusp C:g ...]
///   blowup NAME|meet C D [along C] [times N] [as PREFIX]
///   germ NAME of C meets E1 [E2 ...]
inline BuiltConfiguration run_program(const std::string& text) {
  BuiltConfiguration built;
  Configuration& cfg = built.cfg;
  bool surfaceSeen = false;
  int meetCounter = 0;
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> germLines;

  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const std::string& cmd = toks[0];

    if (cmd == "surface") {
      if (toks.size() != 2) detail::parse_fail(lineNo, "surface P2|local");
      if (toks[1] == "P2")
        cfg = Configuration::p2();
      else if (toks[1] == "local")
        cfg = Configuration::local_germ();
      else
        detail::parse_fail(lineNo, "unknown surface: " + toks[1]);
      surfaceSeen = true;
      continue;
    }
    if (!surfaceSeen) detail::parse_fail(lineNo, "program must start with a surface line");

    if (cmd == "curve") {
      if (toks.size() == 2 && !cfg.planeStart) {
        cfg.add_abstract_curve(toks[1]);
      } else if (toks.size() == 4 && toks[2] == "degree") {
        cfg.add_plane_curve(toks[1], std::stoi(toks[3]));
      } else {
        detail::parse_fail(lineNo, "curve NAME degree D (or curve NAME on a local start)");
      }
      continue;
    }

    if (cmd == "point") {
      if (toks.size() < 4 || toks[2] != "on") detail::parse_fail(lineNo, "point NAME on ...");
      std::string name = toks[1];
      std::vector<GermAt> members;
      std::size_t i = 3;
      for (; i < toks.size() && toks[i] != "contact" && toks[i] != "cusp"; ++i)
        members.push_back(GermAt{cfg.require_curve(toks[i])});
      std::vector<std::tuple<int, int, int>> contacts;
      auto find_member = [&](const std::string& curveName, int skip = -1) {
        int c = cfg.require_curve(curveName);
        for (std::size_t k = 0; k < members.size(); ++k)
          if (members[k].curve == c && static_cast<int>(k) != skip) return static_cast<int>(k);
        detail::parse_fail(lineNo, curveName + " is not a member of point " + name);
      };
      while (i < toks.size()) {
        if (toks[i] == "contact") {
          ++i;
          for (; i < toks.size() && toks[i] != "cusp" && toks[i] != "contact"; ++i) {
            auto colon = toks[i].find(':');
            auto eq = toks[i].find('=');
            if (colon == std::string::npos || eq == std::string::npos || eq < colon)
              detail::parse_fail(lineNo, "contact must be A:B=n");
            std::string a = toks[i].substr(0, colon);
            std::string b = toks[i].substr(colon + 1, eq - colon - 1);
            int order = std::stoi(toks[i].substr(eq + 1));
            int ia = find_member(a);
            int ib = find_member(b, a == b ? ia : -1);
            contacts.emplace_back(ia, ib, order);
          }
        } else if (toks[i] == "cusp") {
          ++i;
          for (; i < toks.size() && toks[i] != "contact" && toks[i] != "cusp"; ++i) {
            auto colon = toks[i].find(':');
            if (colon == std::string::npos) detail::parse_fail(lineNo, "cusp must be C:g");
            int ic = find_member(toks[i].substr(0, colon));
            members[ic].cusp = std::stoi(toks[i].substr(colon + 1));
          }
        } else {
          detail::parse_fail(lineNo, "unexpected token " + toks[i]);
        }
      }
      cfg.add_point(name, std::move(members), contacts);
      continue;
    }

    if (cmd == "blowup") {
      std::size_t i = 1;
      int center = -1;
      std::string prefix;
      if (i < toks.size() && toks[i] == "meet") {
        if (i + 2 >= toks.size()) detail::parse_fail(lineNo, "blowup meet C D ...");
        int a = cfg.require_curve(toks[i + 1]);
        int b = cfg.require_curve(toks[i + 2]);
        center = cfg.meet_point(a, b);
        prefix = "m" + std::to_string(++meetCounter);
        i += 3;
      } else {
        if (i >= toks.size()) detail::parse_fail(lineNo, "blowup POINT ...");
        center = cfg.point_index(toks[i]);
        if (center < 0) detail::parse_fail(lineNo, "unknown point: " + toks[i]);
        prefix = toks[i];
        ++i;
      }
      int along = -1, times = 1;
      bool named = false;
      std::string asName;
      while (i < toks.size()) {
        if (toks[i] == "along" && i + 1 < toks.size()) {
          along = cfg.require_curve(toks[i + 1]);
          i += 2;
        } else if (toks[i] == "times" && i + 1 < toks.size()) {
          times = std::stoi(toks[i + 1]);
          i += 2;
        } else if (toks[i] == "as" && i + 1 < toks.size()) {
          asName = toks[i + 1];
          named = true;
          i += 2;
        } else {
          detail::parse_fail(lineNo, "unexpected token " + toks[i]);
        }
      }
      if (times < 1) detail::parse_fail(lineNo, "times must be >= 1");
      if (times > 1 && along < 0)
        detail::parse_fail(lineNo, "times > 1 requires an along curve");
      for (int k = 1; k <= times; ++k) {
        int followIdx = -1;
        if (along >= 0 && k < times) {
          const auto& mem = cfg.points[center].members;
          for (std::size_t g = 0; g < mem.size(); ++g)
            if (mem[g].curve == along) {
              if (followIdx >= 0)
                detail::parse_fail(lineNo, "along curve has two germs at the center");
              followIdx = static_cast<int>(g);
            }
          if (followIdx < 0)
            detail::parse_fail(lineNo, "along curve does not pass through the center");
        }
        std::map<int, int> landing;
        int e = cfg.blow_up(center, &landing);
        std::string name = named ? (times == 1 ? asName : asName + "." + std::to_string(k))
                                 : prefix + "." + std::to_string(k);
        if (cfg.curve_index(name) >= 0) detail::parse_fail(lineNo, "curve name clash: " + name);
        cfg.curves[e].name = name;
        if (k < times) {
          auto it = landing.find(followIdx);
          if (it == landing.end()) detail::parse_fail(lineNo, "lost the along curve");
          center = it->second;
        }
      }
      continue;
    }

    if (cmd == "germ") {
      // germ NAME of C meets E1 [E2 ...]
      if (toks.size() < 6 || toks[2] != "of" || toks[4] != "meets")
        detail::parse_fail(lineNo, "germ NAME of C meets E...");
      germLines.emplace_back(toks[1], toks[3],
                             std::vector<std::string>(toks.begin() + 5, toks.end()));
      continue;
    }

    detail::parse_fail(lineNo, "unknown command: " + cmd);
  }

  for (auto& [name, curveName, mets] : germLines) {
    int c = cfg.require_curve(curveName);
    std::vector<int> metIdx;
    for (const auto& m : mets) metIdx.push_back(cfg.require_curve(m));
    built.germDecls.push_back({name, {c, metIdx}});
  }
  return built;
}

/// Resolves a declared germ against a contracted model: the branch of the
/// curve whose met-exceptional set matches the declaration.
inline Branch resolve_germ(const SurfaceModel& s, int curve, std::vector<int> mets) {
  std::sort(mets.begin(), mets.end());
  std::vector<Branch> all = branches_at_singular_points(s, curve);
  const Branch* found = nullptr;
  for (const auto& b : all) {
    std::vector<int> m = b.meets;
    std::sort(m.begin(), m.end());
    if (m == mets) {
      if (found) fail(ErrorKind::Parse, "ambiguous germ declaration");
      found = &b;
    }
  }
  if (!found) fail(ErrorKind::Parse, "no branch matches the germ declaration");
  return *found;
}

}  // namespace ldp
