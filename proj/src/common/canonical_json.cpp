#include "augview/common/canonical_json.hpp"

#include <cmath>
#include <cstdio>

namespace augview {

namespace {

void format_float(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out += buf;
}

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::null:
    case json::value_t::discarded:
      out += "null";
      break;
    case json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case json::value_t::number_float:
      format_float(v.get<double>(), out);
      break;
    case json::value_t::string:
      out += v.dump();
      break;
    case json::value_t::binary:
      out += v.dump();
      break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        first = false;
        dump_into(e, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
  }
}

std::string escape_pointer_token(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

bool find_difference(const json& a, const json& b, const std::string& path, std::string& out) {
  if (a.is_object() && b.is_object()) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ia == a.end()) {
        out = path + "/" + escape_pointer_token(ib.key());
        return true;
      }
      if (ib == b.end() || ia.key() < ib.key()) {
        out = path + "/" + escape_pointer_token(ia.key());
        return true;
      }
      if (ib.key() < ia.key()) {
        out = path + "/" + escape_pointer_token(ib.key());
        return true;
      }
      if (find_difference(ia.value(), ib.value(), path + "/" + escape_pointer_token(ia.key()), out)) {
        return true;
      }
      ++ia;
      ++ib;
    }
    return false;
  }
  if (a.is_array() && b.is_array()) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (find_difference(a[i], b[i], path + "/" + std::to_string(i), out)) return true;
    }
    if (a.size() != b.size()) {
      out = path + "/" + std::to_string(n);
      return true;
    }
    return false;
  }
  if (canonical_dump(a) != canonical_dump(b)) {
    out = path.empty() ? "/" : path;
    return true;
  }
  return false;
}

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string canonical_hash(const json& value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_dump(value))));
  return buf;
}

std::string first_difference(const json& a, const json& b) {
  std::string out;
  find_difference(a, b, "", out);
  return out;
}

}  // namespace augview
