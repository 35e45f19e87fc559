#include "hypoindex/contact_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hypoindex/error.hpp"

namespace hypoindex {

namespace {

using nlohmann::json;

struct Position {
    int line = 1;
    int column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
    Position pos;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// JSON has no spelling for NaN or infinity, but hand-written files often try.
// Catch those bare words before the JSON parser turns them into a generic
// syntax error.
void reject_non_finite_words(std::string_view text) {
    static constexpr std::string_view kWords[] = {"NaN", "nan", "Infinity", "infinity", "inf", "Inf", "INF"};
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
            continue;
        }
        if (i > 0 && is_ident_char(text[i - 1])) continue;
        for (auto word : kWords) {
            if (text.substr(i, word.size()) != word) continue;
            const std::size_t end = i + word.size();
            if (end < text.size() && is_ident_char(text[end])) continue;
            const auto pos = position_of(text, i);
            throw ParseError("non-finite numeric literal", pos.line, pos.column);
        }
    }
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ParseError("unknown key '" + key + "' in " + where);
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing required field '" + key + "' in " + where);
    return *it;
}

double require_finite_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError("expected a number at " + where);
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError("non-finite numeric literal at " + where);
    return d;
}

std::string require_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError("expected a string at " + where);
    return v.get<std::string>();
}

GammaLoop parse_loop(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ParseError("expected an object at " + where);
    reject_unknown_keys(obj, {"name", "samples"}, where);
    GammaLoop loop;
    loop.name = require_string(require(obj, "name", where), where + ".name");
    const json& samples = require(obj, "samples", where);
    if (!samples.is_array()) throw ParseError("expected an array at " + where + ".samples");
    loop.samples.reserve(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const std::string at = where + ".samples[" + std::to_string(j) + "]";
        const json& s = samples[j];
        if (!s.is_array() || s.size() != 2) throw ParseError("sample must be a [re, im] pair at " + at);
        loop.samples.emplace_back(require_finite_number(s[0], at + "[0]"), require_finite_number(s[1], at + "[1]"));
    }
    return loop;
}

double nearest_odd(double x) { return 2.0 * std::round((x - 1.0) / 2.0) + 1.0; }

double segment_distance(Complex a, Complex b, Complex p) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

}  // namespace

GammaLoop GammaLoop::reversed() const {
    GammaLoop r{name, samples};
    std::reverse(r.samples.begin(), r.samples.end());
    return r;
}

double GammaLoop::max_abs() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s));
    return m;
}

double ContactInstance::max_abs_gamma() const {
    double m = 0.0;
    for (const auto& loop : loops) m = std::max(m, loop.max_abs());
    return m;
}

ContactInstance parse_instance(std::string_view text) {
    reject_non_finite_words(text);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto pos = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("syntax error", pos.line, pos.column);
    } catch (const json::out_of_range&) {
        throw ParseError("non-finite numeric literal (number overflows a double)");
    }
    if (!doc.is_object()) throw ParseError("top-level value must be an object", 1, 1);
    reject_unknown_keys(doc, {"manifold", "clearance", "loops"}, "instance");

    ContactInstance inst;
    inst.manifold_label = require_string(require(doc, "manifold", "instance"), "manifold");
    inst.clearance = require_finite_number(require(doc, "clearance", "instance"), "clearance");
    const json& loops = require(doc, "loops", "instance");
    if (!loops.is_array()) throw ParseError("expected an array at loops");
    for (std::size_t i = 0; i < loops.size(); ++i) {
        inst.loops.push_back(parse_loop(loops[i], "loops[" + std::to_string(i) + "]"));
    }
    return inst;
}

std::string serialize_instance(const ContactInstance& inst) {
    json doc;
    doc["manifold"] = inst.manifold_label;
    doc["clearance"] = inst.clearance;
    doc["loops"] = json::array();
    for (const auto& loop : inst.loops) {
        json samples = json::array();
        for (const auto& s : loop.samples) samples.push_back({s.real(), s.imag()});
        doc["loops"].push_back({{"name", loop.name}, {"samples", std::move(samples)}});
    }
    return doc.dump(2) + "\n";
}

double angular_step(Complex from, Complex to, Complex center) { return std::arg((to - center) / (from - center)); }

std::vector<int> relevant_odd_integers(const ContactInstance& inst) {
    std::vector<int> odds;
    if (inst.loops.empty()) return odds;
    const int bound = static_cast<int>(std::ceil(inst.max_abs_gamma()));
    for (int k = -bound; k <= bound; ++k) {
        if (k % 2 != 0) odds.push_back(k);
    }
    return odds;
}

ValidationReport validate_instance(const ContactInstance& inst) {
    ValidationReport report;
    auto add = [&report](const std::string& loop, int index, std::string_view rule, std::string message) {
        report.violations.push_back({loop, index, std::string(rule), std::move(message)});
    };

    const bool clearance_ok = std::isfinite(inst.clearance) && inst.clearance > 0.0;
    if (!clearance_ok) add("", -1, rules::kPositiveClearance, "clearance must be a finite positive number");

    bool all_finite = true;
    for (const auto& loop : inst.loops) {
        for (std::size_t j = 0; j < loop.samples.size(); ++j) {
            const auto& s = loop.samples[j];
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                all_finite = false;
                add(loop.name, static_cast<int>(j), rules::kFinite, "sample is not finite");
            }
        }
    }
    if (!all_finite) {
        report.ok = false;
        return report;
    }

    report.max_abs_gamma = inst.max_abs_gamma();
    report.relevant_odds = relevant_odd_integers(inst);

    for (const auto& loop : inst.loops) {
        const auto& s = loop.samples;
        if (s.size() < 3) {
            add(loop.name, -1, rules::kMinSamples,
                "loop has " + std::to_string(s.size()) + " samples, at least 3 required");
            continue;
        }
        std::vector<bool> touches(s.size(), false);
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double k = nearest_odd(s[j].real());
            const double dist = std::abs(s[j] - Complex(k, 0.0));
            if (dist == 0.0) touches[j] = true;
            if (clearance_ok && dist < inst.clearance) {
                std::ostringstream msg;
                msg << "distance " << dist << " to odd integer " << static_cast<long long>(k) << " is below clearance "
                    << inst.clearance;
                add(loop.name, static_cast<int>(j), rules::kClearance, msg.str());
            }
        }
        for (int k : report.relevant_odds) {
            const Complex center(k, 0.0);
            for (std::size_t j = 0; j < s.size(); ++j) {
                const std::size_t next = (j + 1) % s.size();
                if (touches[j] || touches[next]) continue;
                if (clearance_ok) {
                    const double dist = segment_distance(s[j], s[next], center);
                    if (dist < inst.clearance / 2.0) {
                        std::ostringstream msg;
                        msg << "segment to the next sample passes within " << dist << " of " << k;
                        add(loop.name, static_cast<int>(j), rules::kSegmentClearance, msg.str());
                    }
                }
                const double step = angular_step(s[j], s[next], center);
                if (std::abs(step) >= std::numbers::pi) {
                    add(loop.name, static_cast<int>(j), rules::kAdequacy,
                        "angular step around " + std::to_string(k) + " reaches pi");
                }
            }
        }
    }
    report.ok = report.violations.empty();
    return report;
}

}  // namespace hypoindex
