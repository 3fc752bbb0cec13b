#pragma once

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>

#include "tangleforge/errors.hpp"

namespace tangleforge {

struct Caps {
  int max_vertices = 16;
  int max_order = 6;
  std::size_t max_separations = 40;       // |S_k| for profile search
  std::size_t max_universe = 1u << 20;    // full separation universe
  std::size_t max_checked_elements = 8192;
  std::size_t max_profinite_candidates = 12;
  std::size_t max_limits = 1u << 16;

  // "key=value,key=value" with keys n, k, sk, universe, checked, candidates, limits.
  static Caps parse(const std::string& text) { return parse(text, Caps{}); }
  static Caps parse(const std::string& text, Caps base) {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("caps: expected key=value, got '" + item + "'");
      std::string key = item.substr(0, eq);
      unsigned long long value = 0;
      try {
        value = std::stoull(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("caps: bad value in '" + item + "'");
      }
      if (key == "n") base.max_vertices = static_cast<int>(value);
      else if (key == "k") base.max_order = static_cast<int>(value);
      else if (key == "sk") base.max_separations = value;
      else if (key == "universe") base.max_universe = value;
      else if (key == "checked") base.max_checked_elements = value;
      else if (key == "candidates") base.max_profinite_candidates = value;
      else if (key == "limits") base.max_limits = value;
      else throw ParseError("caps: unknown key '" + key + "'");
    }
    if (base.max_vertices > 64) throw ParseError("caps: n is limited to 64");
    return base;
  }

  static Caps from_environment() { return from_environment(Caps{}); }
  static Caps from_environment(Caps base) {
    if (const char* env = std::getenv("TANGLEFORGE_CAPS")) return parse(env, base);
    return base;
  }
};

}  // namespace tangleforge
