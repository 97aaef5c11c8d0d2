#include "primform/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace primform {
namespace {

struct Registry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  Registry() {
    for (const char* n : {"z", "x", "y"}) add(n);
    for (int i = 0; i < 16; ++i) add("t" + std::to_string(i));
    for (int i = 0; i < 16; ++i) add("a" + std::to_string(i));
    add("q");
    for (int i = 1; i <= 4; ++i) add("E" + std::to_string(i));
    add("s");
  }

  std::uint32_t add(const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names.size());
    names.push_back(name);
    ids.emplace(name, id);
    return id;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  return Symbol(r.add(std::string(name)));
}

const std::string& Symbol::name() const {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  return r.names[id_];
}

}  // namespace primform
