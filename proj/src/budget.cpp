#include "brauer/budget.hpp"

#include <cstdlib>
#include <sstream>

#include "brauer/error.hpp"

namespace brauer {

Budget Budget::parse(const std::string& text) {
  Budget b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::ParseError, "budget item '" + item + "' lacks '='");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    long long v = 0;
    try {
      std::size_t pos = 0;
      v = std::stoll(value, &pos);
      if (value.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "budget value for '" + key + "' is not an integer");
    }
    if (v < 0) fail(ErrorKind::ParseError, "budget value for '" + key + "' is negative");
    if (key == "dim") b.dim = static_cast<int>(v);
    else if (key == "tries") b.tries = static_cast<long>(v);
    else if (key == "enum") b.enum_points = static_cast<long>(v);
    else if (key == "strength") b.strength_nodes = static_cast<long>(v);
    else if (key == "depth") b.max_depth = static_cast<int>(v);
    else if (key == "seed") b.seed = static_cast<std::uint64_t>(v);
    else fail(ErrorKind::ParseError, "unknown budget key '" + key + "'");
  }
  return b;
}

Budget Budget::from_env() {
  const char* env = std::getenv("BRAUER_BUDGET_DEFAULT");
  if (env == nullptr || *env == '\0') return Budget{};
  return parse(env);
}

std::string Budget::to_string() const {
  std::ostringstream out;
  out << "dim=" << dim << ",tries=" << tries << ",enum=" << enum_points << ",strength=" << strength_nodes
      << ",depth=" << max_depth << ",seed=" << seed;
  return out.str();
}

}  // namespace brauer
