#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geodiff/bytes.hpp"

namespace geodiff::testing {

// Emits Android binary XML (the AndroidManifest.xml wire format): one
// string pool (UTF-8 or UTF-16), a resource map pinning android:name,
// and start/end element chunks with typed string attributes.
class AxmlBuilder {
 public:
  struct Attr {
    std::string ns;     // namespace uri, empty for none
    std::string name;
    std::string value;
    // Leave rawValue unset and deliver the string through the typed
    // value only, as newer aapt2 output does.
    bool typed_only = false;
  };

  explicit AxmlBuilder(bool utf8_pool = true) : utf8_pool_(utf8_pool) {}

  // Replaces the pool spelling of "name" while the resource map still
  // identifies the attribute, mimicking obfuscated manifests.
  AxmlBuilder& mangle_name_string(const std::string& spelling);

  AxmlBuilder& start(const std::string& element, std::vector<Attr> attrs = {});
  AxmlBuilder& end();

  Bytes build() const;

  // The usual manifest skeleton in one call: package attribute,
  // uses-permission elements, and components under <application>.
  static Bytes manifest(
      const std::string& package, const std::vector<std::string>& permissions,
      const std::vector<std::pair<std::string, std::string>>& components,
      bool utf8_pool = true);

 private:
  struct Event {
    bool is_start = false;
    std::string element;
    std::vector<Attr> attrs;
  };
  bool utf8_pool_;
  std::string name_spelling_ = "name";
  std::vector<Event> events_;
};

// android: namespace uri, shared with tests that build attributes.
extern const char kAndroidNs[];

}  // namespace geodiff::testing
