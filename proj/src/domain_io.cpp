#include "wedgebound/domain_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Line of the last character handed to the JSON lexer. The lexer reads one
// character past a number, and a newline read that way still belongs to the
// number's line.
struct LineState {
  int last = 1;
  int next = 1;
};

class LineCountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator(const char* p, LineState* state) : p_(p), state_(state) {}
  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    state_->last = state_->next;
    if (*p_ == '\n') ++state_->next;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const LineCountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const LineCountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_;
  LineState* state_;
};

// Records the line of every value and key, keyed by JSON pointer.
class LineMapper : public json::json_sax_t {
 public:
  explicit LineMapper(const LineState* state) : state_(state) {}

  std::map<std::string, int> lines;
  int error_line = 0;
  std::string error;

  bool null() override { return value(); }
  bool boolean(bool) override { return value(); }
  bool number_integer(number_integer_t) override { return value(); }
  bool number_unsigned(number_unsigned_t) override { return value(); }
  bool number_float(number_float_t, const string_t&) override { return value(); }
  bool string(string_t&) override { return value(); }
  bool binary(binary_t&) override { return value(); }
  bool start_object(std::size_t) override {
    value();
    stack_.push_back({path(), true, "", 0});
    return true;
  }
  bool key(string_t& k) override {
    stack_.back().key = k;
    lines[path()] = state_->last;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    value();
    stack_.push_back({path(), false, "", -1});
    return true;
  }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    error_line = state_->last;
    error = ex.what();
    return false;
  }

 private:
  struct Frame {
    std::string base;
    bool object;
    std::string key;
    int index;
  };

  static std::string escape(const std::string& k) {
    std::string out;
    for (char c : k) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  std::string path() const {
    if (stack_.empty()) return "";
    const Frame& f = stack_.back();
    return f.base + "/" + (f.object ? escape(f.key) : std::to_string(f.index));
  }

  bool value() {
    if (!stack_.empty() && !stack_.back().object) ++stack_.back().index;
    lines[path()] = state_->last;
    return true;
  }

  const LineState* state_;
  std::vector<Frame> stack_;
};

class Reader {
 public:
  Reader(const json& doc, std::map<std::string, int> lines, std::string source)
      : doc_(doc), lines_(std::move(lines)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    int line = 0;
    for (std::string p = pointer;; p = p.substr(0, p.rfind('/'))) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        line = it->second;
        break;
      }
      if (p.empty()) break;
    }
    std::ostringstream out;
    out << source_ << ':' << line << ": " << message;
    throw ParseError(out.str(), line);
  }

  const json& at(const std::string& pointer) const { return doc_.at(json::json_pointer(pointer)); }
  bool has(const std::string& pointer) const { return doc_.contains(json::json_pointer(pointer)); }

  double number(const std::string& pointer) const {
    if (!has(pointer)) fail(pointer, "missing field '" + pointer.substr(1) + "'");
    const json& v = at(pointer);
    if (!v.is_number()) fail(pointer, "'" + pointer.substr(1) + "' must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& pointer, double fallback) const {
    return has(pointer) ? number(pointer) : fallback;
  }

  Point point(const std::string& pointer) const {
    const json& v = at(pointer);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(pointer, "expected a point [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  Point point_or(const std::string& pointer, Point fallback) const {
    return has(pointer) ? point(pointer) : fallback;
  }

  std::vector<Point> points(const std::string& pointer, std::size_t min_size) const {
    const json& v = at(pointer);
    if (!v.is_array()) fail(pointer, "expected a list of [x, y] points");
    if (v.size() < min_size) {
      fail(pointer, "expected at least " + std::to_string(min_size) + " points");
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(point(pointer + "/" + std::to_string(i)));
    return out;
  }

 private:
  const json& doc_;
  std::map<std::string, int> lines_;
  std::string source_;
};

Shape read_shape(const Reader& r, const std::string& kind) {
  if (kind == "disc") return Disc{r.point_or("/center", {}), r.number("/radius")};
  if (kind == "sector") {
    return CircularSector{r.point_or("/vertex", {}), r.number("/radius"), r.number("/aperture"),
                          r.number_or("/bisector", 0.0)};
  }
  if (kind == "annular_sector") {
    return AnnularSector{r.point_or("/center", {}), r.number("/rho1"), r.number("/rho2"),
                         r.number("/aperture"), r.number_or("/bisector", 0.0)};
  }
  if (kind == "polygon") return Polygon{r.points("/vertices", 3)};
  r.fail("/shape", "unknown shape '" + kind + "' (disc, sector, annular_sector, polygon)");
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"disc", {"center", "radius"}},
      {"sector", {"vertex", "radius", "aperture", "bisector"}},
      {"annular_sector", {"center", "rho1", "rho2", "aperture", "bisector"}},
      {"polygon", {"vertices"}},
  };
  return keys;
}

std::vector<double> parameters(std::string_view name, std::string_view text, std::size_t count) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view field = text.substr(start, comma - start);
    double v = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
      throw ParseError("@" + std::string(name) + ": '" + std::string(field) + "' is not a number");
    }
    out.push_back(v);
    start = comma + 1;
  }
  if (out.size() != count) {
    throw ParseError("@" + std::string(name) + " takes " + std::to_string(count) + " parameter(s)");
  }
  return out;
}

Domain diamond(double s) {
  return Domain(Polygon{{{s, 0}, {0, s}, {-s, 0}, {0, -s}}}, {Chain{{-s, 0}, {0, 0}}});
}

json point_json(Point p) { return json::array({p.x, p.y}); }

}  // namespace

Domain parse_domain(std::string_view text, std::string_view source) {
  const std::string src(source);
  LineState state;
  LineMapper mapper(&state);
  const bool ok = json::sax_parse(LineCountingIterator(text.data(), &state),
                                  LineCountingIterator(text.data() + text.size(), &state), &mapper);
  if (!ok) {
    std::string detail = mapper.error;
    if (const auto pos = detail.find("] "); pos != std::string::npos) detail = detail.substr(pos + 2);
    throw ParseError(src + ":" + std::to_string(mapper.error_line) + ": " + detail, mapper.error_line);
  }
  const json doc = json::parse(text);
  const Reader r(doc, mapper.lines, src);
  if (!doc.is_object()) r.fail("", "top level must be an object");
  if (!r.has("/shape")) r.fail("", "missing field 'shape'");
  if (!r.at("/shape").is_string()) r.fail("/shape", "'shape' must be a string");
  const std::string kind = r.at("/shape").get<std::string>();
  const auto allowed = allowed_keys().find(kind);
  if (allowed != allowed_keys().end()) {
    for (const auto& [key, value] : doc.items()) {
      if (key != "shape" && key != "slits" && key != "pose" && key != "name" &&
          !allowed->second.contains(key)) {
        r.fail("/" + key, "unknown field '" + key + "' for shape '" + kind + "'");
      }
    }
  }
  const Shape shape = read_shape(r, kind);

  std::vector<Chain> slits;
  if (r.has("/slits")) {
    if (!r.at("/slits").is_array()) r.fail("/slits", "'slits' must be a list of point lists");
    for (std::size_t i = 0; i < r.at("/slits").size(); ++i) {
      slits.push_back(r.points("/slits/" + std::to_string(i), 2));
    }
  }
  Pose pose;
  if (r.has("/pose")) {
    if (!r.at("/pose").is_object()) r.fail("/pose", "'pose' must be an object");
    for (const auto& [key, value] : r.at("/pose").items()) {
      if (key != "origin" && key != "rotation") r.fail("/pose/" + key, "unknown pose field '" + key + "'");
    }
    pose = Pose(r.point_or("/pose/origin", {}), r.number_or("/pose/rotation", 0.0));
  }

  try {
    Shape checked = shape;
    Domain(std::move(checked));
  } catch (const ValidationError& e) {
    // Point at the field the message names, if any.
    std::string where = "/shape";
    for (const std::string& key : allowed_keys().at(kind)) {
      if (r.has("/" + key) && std::string_view(e.what()).find(key) != std::string_view::npos) {
        where = "/" + key;
        break;
      }
    }
    r.fail(kind == "polygon" ? "/vertices" : where, e.what());
  }
  try {
    return Domain(shape, slits, pose);
  } catch (const ValidationError& e) {
    r.fail("/slits", e.what());
  }
}

Domain builtin_domain(std::string_view name) {
  if (name.starts_with('@')) name.remove_prefix(1);
  const std::size_t colon = name.find(':');
  const std::string_view base = name.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? "" : name.substr(colon + 1);
  const auto no_args = [&] {
    if (colon != std::string_view::npos) throw ParseError("@" + std::string(base) + " takes no parameters");
  };
  try {
    if (base == "D0") {
      no_args();
      return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}});
    }
    if (base == "D1") {
      no_args();
      return Domain(Polygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}, {Chain{{-1, 0}, {0, 0}}});
    }
    if (base == "D2-literal") {
      no_args();
      return diamond(std::numbers::sqrt2 / 2);
    }
    if (base == "D2-area4") {
      no_args();
      return diamond(std::numbers::sqrt2);
    }
    if (base == "cut-disc") {
      const double r = parameters(base, args, 1)[0];
      return Domain(Disc{{0, 0}, r}, {Chain{{-r, 0}, {0, 0}}});
    }
    if (base == "sector") {
      const auto p = parameters(base, args, 2);
      if (!(p[0] >= 1 && p[0] <= 2)) throw ParseError("@sector: beta must lie in [1, 2]");
      return Domain(CircularSector{{0, 0}, p[1], 2 * kPi / p[0], 0});
    }
    if (base == "annulus") {
      const auto p = parameters(base, args, 3);
      if (!(p[0] >= 1 && p[0] <= 2)) throw ParseError("@annulus: beta must lie in [1, 2]");
      return Domain(AnnularSector{{0, 0}, p[1], p[2], 2 * kPi / p[0], 0});
    }
  } catch (const ValidationError& e) {
    throw ParseError("@" + std::string(name) + ": " + e.what());
  }
  throw ParseError("unknown built-in domain '@" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"@D0", "@D1", "@D2-literal", "@D2-area4", "@cut-disc:r", "@sector:beta,r",
          "@annulus:beta,r1,r2"};
}

NamedDomain load_domain(const std::string& path_or_name) {
  if (path_or_name.starts_with('@')) return {path_or_name, builtin_domain(path_or_name)};
  std::ifstream in(path_or_name, std::ios::binary);
  if (!in) throw ParseError(path_or_name + ": cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {path_or_name, parse_domain(text, path_or_name)};
}

std::string domain_to_json(const Domain& domain) {
  json doc;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          doc["shape"] = "disc";
          doc["center"] = point_json(s.center);
          doc["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, CircularSector>) {
          doc["shape"] = "sector";
          doc["vertex"] = point_json(s.vertex);
          doc["radius"] = s.radius;
          doc["aperture"] = s.aperture;
          doc["bisector"] = s.bisector;
        } else if constexpr (std::is_same_v<T, AnnularSector>) {
          doc["shape"] = "annular_sector";
          doc["center"] = point_json(s.center);
          doc["rho1"] = s.rho1;
          doc["rho2"] = s.rho2;
          doc["aperture"] = s.aperture;
          doc["bisector"] = s.bisector;
        } else {
          doc["shape"] = "polygon";
          doc["vertices"] = json::array();
          for (Point p : s.vertices) doc["vertices"].push_back(point_json(p));
        }
      },
      domain.shape());
  if (!domain.slits().empty()) {
    doc["slits"] = json::array();
    for (const Chain& c : domain.slits()) {
      json chain = json::array();
      for (Point p : c) chain.push_back(point_json(p));
      doc["slits"].push_back(chain);
    }
  }
  doc["pose"] = {{"origin", point_json(domain.pose().origin)}, {"rotation", domain.pose().rotation}};
  return doc.dump(2) + "\n";
}

}  // namespace wedgebound
