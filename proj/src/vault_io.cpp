#include "sfv/vault_io.hpp"

#include <json.hpp>

#include <set>

namespace sfv {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void fail(VaultIoErrorKind kind, const std::string& location,
                       const std::string& what) {
    throw VaultIoError(kind, location, what);
}

json field_to_json(const FieldPtr& f) {
    json j;
    j["p"] = f->characteristic();
    j["m"] = f->degree();
    if (f->degree() > 1) j["poly"] = f->modulus();
    return j;
}

json elem_to_json(const FieldPtr& f, std::uint32_t code) { return json(f->coeffs_of(code)); }

json vec_to_json(const FieldPtr& f, const Vec& v) {
    json j = json::array();
    for (auto code : v) j.push_back(elem_to_json(f, code));
    return j;
}

FieldPtr field_from_json(const json& j, const std::string& loc) {
    if (!j.is_object() || !j.contains("p") || !j.contains("m")) {
        fail(VaultIoErrorKind::MalformedJson, loc, "field descriptor needs p and m");
    }
    const auto p = j.at("p").get<std::uint32_t>();
    const auto m = j.at("m").get<std::uint32_t>();
    std::vector<std::uint32_t> poly;
    if (j.contains("poly")) poly = j.at("poly").get<std::vector<std::uint32_t>>();
    if (m == 1 && !poly.empty()) {
        fail(VaultIoErrorKind::InvariantViolation, loc, "prime field carries a reduction polynomial");
    }
    try {
        return Field::make(p, m, poly);
    } catch (const std::invalid_argument& e) {
        fail(VaultIoErrorKind::InvariantViolation, loc, e.what());
    }
}

std::uint32_t elem_from_json(const FieldPtr& f, const json& j, const std::string& loc) {
    if (!j.is_array() || j.size() != f->degree()) {
        fail(VaultIoErrorKind::InvariantViolation, loc,
             "element must be a coefficient array of length m");
    }
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : j) {
        if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= f->characteristic()) {
            fail(VaultIoErrorKind::InvariantViolation, loc, "coefficient out of range");
        }
        coeffs.push_back(c.get<std::uint32_t>());
    }
    return f->code_of(coeffs);
}

Vec vec_from_json(const FieldPtr& f, const json& j, std::size_t len, const std::string& loc) {
    if (!j.is_array() || j.size() != len) {
        fail(VaultIoErrorKind::InvariantViolation, loc, "vector has wrong length");
    }
    Vec v;
    v.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        v.push_back(elem_from_json(f, j[i], loc + "[" + std::to_string(i) + "]"));
    }
    return v;
}

bool is_hex_digest(const std::string& s) {
    if (s.size() != 64) return false;
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

PfvVault pfv_from_json(const json& j) {
    PfvVault v;
    v.field = field_from_json(j.at("field"), "field");
    const auto& params = j.at("params");
    v.ell = params.at("l").get<std::size_t>();
    v.t = params.at("t").get<std::size_t>();
    v.r = params.at("r").get<std::size_t>();
    const auto& points = j.at("points");
    if (!points.is_array()) fail(VaultIoErrorKind::MalformedJson, "points", "expected an array");
    if (points.size() != v.r) {
        fail(VaultIoErrorKind::InvariantViolation, "points", "point count differs from r");
    }
    if (!(v.r > v.t && v.t > v.ell)) {
        fail(VaultIoErrorKind::InvariantViolation, "params", "need r > t > l");
    }
    if (v.r > v.field->size()) {
        fail(VaultIoErrorKind::InvariantViolation, "params", "more points than field elements");
    }
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string loc = "points[" + std::to_string(i) + "]";
        const auto x = elem_from_json(v.field, points[i].at("x"), loc + ".x");
        const auto y = elem_from_json(v.field, points[i].at("y"), loc + ".y");
        if (!seen.insert(x).second) {
            fail(VaultIoErrorKind::InvariantViolation, loc, "duplicate first coordinate");
        }
        v.points.emplace_back(x, y);
    }
    return v;
}

SfvVault sfv_from_json(const json& j) {
    SfvVault v;
    const FieldPtr field = field_from_json(j.at("field"), "field");
    const auto& params = j.at("params");
    const auto k = params.at("k").get<std::uint32_t>();
    const auto s = params.at("s").get<std::uint32_t>();
    const auto n = params.at("n").get<std::uint32_t>();
    if (n != k * s) fail(VaultIoErrorKind::InvariantViolation, "params", "n != k*s");
    v.mode = sfv_mode_from_string(params.at("mode").get<std::string>());
    if (v.hashed()) {
        if (!params.contains("hash") || params.at("hash") != "sha-256") {
            fail(VaultIoErrorKind::InvariantViolation, "params.hash",
                 "hashed vaults must declare hash = sha-256");
        }
    } else if (params.contains("hash")) {
        fail(VaultIoErrorKind::InvariantViolation, "params.hash",
             "hash declared on an unhashed vault");
    }
    v.t = params.at("t").get<std::size_t>();
    v.r = params.at("r").get<std::size_t>();

    const auto& pj = params.at("poly");
    if (!pj.is_array() || pj.size() != k + 1) {
        fail(VaultIoErrorKind::InvariantViolation, "params.poly",
             "construction polynomial must have k+1 coefficients");
    }
    std::vector<std::uint32_t> pcoeffs;
    for (std::size_t i = 0; i < pj.size(); ++i) {
        pcoeffs.push_back(
            elem_from_json(field, pj[i], "params.poly[" + std::to_string(i) + "]"));
    }
    try {
        v.code = SpreadCode::make(field, k, s, Poly(field, pcoeffs));
    } catch (const std::invalid_argument& e) {
        fail(VaultIoErrorKind::InvariantViolation, "params.poly", e.what());
    }

    const auto& points = j.at("points");
    if (!points.is_array()) fail(VaultIoErrorKind::MalformedJson, "points", "expected an array");
    if (points.size() != v.r) {
        fail(VaultIoErrorKind::InvariantViolation, "points", "point count differs from r");
    }
    if (v.t > v.r) fail(VaultIoErrorKind::InvariantViolation, "params", "t exceeds r");

    std::set<Vec> seen_x;
    std::set<std::string> seen_digest;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string loc = "points[" + std::to_string(i) + "]";
        SfvPoint pt;
        if (v.hashed()) {
            const auto& xj = points[i].at("x");
            if (!xj.is_string() || !is_hex_digest(xj.get<std::string>())) {
                fail(VaultIoErrorKind::InvariantViolation, loc + ".x",
                     "expected a 64-char lowercase hex digest");
            }
            pt.digest = xj.get<std::string>();
            if (!seen_digest.insert(pt.digest).second) {
                fail(VaultIoErrorKind::InvariantViolation, loc, "duplicate first coordinate");
            }
        } else {
            pt.x = vec_from_json(field, points[i].at("x"), k, loc + ".x");
            if (!seen_x.insert(pt.x).second) {
                fail(VaultIoErrorKind::InvariantViolation, loc, "duplicate first coordinate");
            }
        }
        pt.y = vec_from_json(field, points[i].at("y"), n, loc + ".y");
        v.points.push_back(std::move(pt));
    }
    return v;
}

}  // namespace

const char* to_string(VaultIoErrorKind k) {
    switch (k) {
        case VaultIoErrorKind::MalformedJson: return "malformed_json";
        case VaultIoErrorKind::UnknownVersion: return "unknown_version";
        case VaultIoErrorKind::InvariantViolation: return "invariant_violation";
    }
    return "?";
}

std::string vault_serialize(const PfvVault& vault) {
    json j;
    j["version"] = kFormatVersion;
    j["scheme"] = "pfv";
    j["field"] = field_to_json(vault.field);
    j["params"] = {{"l", vault.ell}, {"t", vault.t}, {"r", vault.r}};
    json pts = json::array();
    for (const auto& [x, y] : vault.points) {
        pts.push_back({{"x", elem_to_json(vault.field, x)}, {"y", elem_to_json(vault.field, y)}});
    }
    j["points"] = std::move(pts);
    return j.dump();
}

std::string vault_serialize(const SfvVault& vault) {
    const auto& code = vault.code;
    const auto& field = code->field();
    json j;
    j["version"] = kFormatVersion;
    j["scheme"] = "sfv";
    j["field"] = field_to_json(field);
    json params;
    params["k"] = code->block_dim();
    params["s"] = code->block_count();
    params["n"] = code->ambient();
    params["mode"] = to_string(vault.mode);
    if (vault.hashed()) params["hash"] = "sha-256";
    params["t"] = vault.t;
    params["r"] = vault.r;
    json poly = json::array();
    for (std::uint32_t i = 0; i <= code->block_dim(); ++i) {
        poly.push_back(elem_to_json(field, code->modulus().coeff(i)));
    }
    params["poly"] = std::move(poly);
    j["params"] = std::move(params);

    json pts = json::array();
    for (const auto& pt : vault.points) {
        json pj;
        if (vault.hashed()) {
            pj["x"] = pt.digest;
        } else {
            pj["x"] = vec_to_json(field, pt.x);
        }
        pj["y"] = vec_to_json(field, pt.y);
        pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    return j.dump();
}

AnyVault vault_parse(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        fail(VaultIoErrorKind::MalformedJson, "", e.what());
    }
    try {
        if (!j.is_object()) fail(VaultIoErrorKind::MalformedJson, "", "expected a JSON object");
        if (!j.contains("version") || !j.at("version").is_number_integer()) {
            fail(VaultIoErrorKind::MalformedJson, "version", "missing format version");
        }
        if (j.at("version").get<int>() != kFormatVersion) {
            fail(VaultIoErrorKind::UnknownVersion, "version",
                 "unsupported format version " + j.at("version").dump());
        }
        const auto scheme = j.at("scheme").get<std::string>();
        if (scheme == "pfv") return pfv_from_json(j);
        if (scheme == "sfv") return sfv_from_json(j);
        fail(VaultIoErrorKind::InvariantViolation, "scheme", "unknown scheme " + scheme);
    } catch (const VaultIoError&) {
        throw;
    } catch (const json::exception& e) {
        fail(VaultIoErrorKind::MalformedJson, "", e.what());
    } catch (const std::invalid_argument& e) {
        fail(VaultIoErrorKind::InvariantViolation, "", e.what());
    }
}

}  // namespace sfv
