#include "sfv/bigint.hpp"
#include "sfv/rng.hpp"
#include "sfv/security.hpp"
#include "sfv/vault_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    CliError(std::string code, const std::string& what, int exit_code = 1)
        : std::runtime_error(what), code(std::move(code)), exit_code(exit_code) {}
    std::string code;
    int exit_code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("io_error", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError("io_error", "cannot write " + path);
    out << bytes;
}

/// Feature/witness file: one vector per line, coordinates as integers
/// (canonical element codes) separated by spaces.
std::vector<std::vector<std::uint32_t>> read_vectors(const std::string& path,
                                                     std::size_t coords_per_line) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<std::uint32_t>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::uint32_t> v;
        std::uint64_t value;
        while (ls >> value) v.push_back(static_cast<std::uint32_t>(value));
        if (v.empty()) continue;
        if (v.size() != coords_per_line) {
            throw CliError("bad_args", path + ":" + std::to_string(lineno) + ": expected " +
                                           std::to_string(coords_per_line) + " coordinates");
        }
        out.push_back(std::move(v));
    }
    if (out.empty()) throw CliError("bad_args", path + ": no vectors found");
    return out;
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw CliError("bad_args", "q must be at least 2");
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            std::uint32_t m = 0;
            std::uint64_t v = q;
            while (v % p == 0) {
                v /= p;
                ++m;
            }
            if (v != 1) throw CliError("bad_args", "q must be a prime power");
            return {static_cast<std::uint32_t>(p), m};
        }
    }
    return {static_cast<std::uint32_t>(q), 1};
}

std::vector<std::uint32_t> parse_int_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return out;
}

json elem_json(const sfv::FieldPtr& f, std::uint32_t code) { return json(f->coeffs_of(code)); }

json key_json_pfv(const sfv::Poly& key, std::size_t ell) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < ell; ++i) coeffs.push_back(elem_json(key.field(), key.coeff(i)));
    return {{"scheme", "pfv"}, {"coefficients", coeffs}};
}

json key_json_sfv(const sfv::SpreadCodePtr& code, const sfv::Codeword& cw) {
    json rows = json::array();
    const auto& basis = cw.space.basis();
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            row.push_back(elem_json(code->field(), basis.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return {{"scheme", "sfv"}, {"rows", rows}};
}

json rational_json(const sfv::BigRat& r) {
    return {{"num", boost::multiprecision::numerator(r).str()},
            {"den", boost::multiprecision::denominator(r).str()},
            {"value", sfv::to_double(r)}};
}

struct LockParams {
    std::uint64_t q = 0;
    std::size_t ell = 0;
    std::uint32_t k = 0, s = 0;
    std::size_t r = 0;
    std::vector<std::uint32_t> poly;  // spread construction polynomial, codes
    sfv::FieldPtr field;              // set when --params provided a field block
};

LockParams load_params_file(const std::string& path) {
    LockParams p;
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw CliError("malformed_json", std::string("params file: ") + e.what());
    }
    if (j.contains("field")) {
        const auto& fj = j.at("field");
        std::vector<std::uint32_t> mod;
        if (fj.contains("poly")) mod = fj.at("poly").get<std::vector<std::uint32_t>>();
        p.field = sfv::Field::make(fj.at("p").get<std::uint32_t>(),
                                   fj.at("m").get<std::uint32_t>(), mod);
        p.q = p.field->size();
    }
    if (j.contains("q")) p.q = j.at("q").get<std::uint64_t>();
    if (j.contains("l")) p.ell = j.at("l").get<std::size_t>();
    if (j.contains("k")) p.k = j.at("k").get<std::uint32_t>();
    if (j.contains("s")) p.s = j.at("s").get<std::uint32_t>();
    if (j.contains("r")) p.r = j.at("r").get<std::size_t>();
    if (j.contains("poly")) p.poly = j.at("poly").get<std::vector<std::uint32_t>>();
    return p;
}

sfv::FieldPtr field_for(std::uint64_t q) {
    auto [p, m] = factor_prime_power(q);
    return sfv::Field::make(p, m);
}

int run(int argc, char** argv) {
    CLI::App app{"Fuzzy vaults over polynomial and subspace codes"};
    app.require_subcommand(1);

    // ---- code-info ----------------------------------------------------
    auto* info = app.add_subcommand("code-info", "Spread-code parameters");
    std::uint64_t info_q = 2;
    std::uint32_t info_k = 2, info_s = 2;
    std::string info_poly;
    info->add_option("--q", info_q, "Field size (prime power)")->required();
    info->add_option("--k", info_k, "Block dimension")->required();
    info->add_option("--s", info_s, "Block count")->required();
    info->add_option("--poly", info_poly, "Construction polynomial, comma-separated codes");

    // ---- lock ----------------------------------------------------------
    auto* lock = app.add_subcommand("lock", "Create a vault");
    std::string lock_scheme, lock_mode = "strict", lock_params, lock_features, lock_out;
    std::uint64_t lock_seed = 0, lock_q = 0;
    std::size_t lock_l = 0, lock_r = 0;
    std::uint32_t lock_k = 0, lock_s = 0;
    std::string lock_poly;
    lock->add_option("--scheme", lock_scheme, "pfv or sfv")->required();
    lock->add_option("--mode", lock_mode, "strict, relaxed or hashed (sfv)");
    lock->add_option("--params", lock_params, "JSON parameter file");
    lock->add_option("--features", lock_features, "Feature file")->required();
    lock->add_option("--seed", lock_seed, "Master seed")->required();
    lock->add_option("--out", lock_out, "Output vault path")->required();
    lock->add_option("--q", lock_q, "Field size (prime power)");
    lock->add_option("--l", lock_l, "Key length (pfv)");
    lock->add_option("--k", lock_k, "Block dimension (sfv)");
    lock->add_option("--s", lock_s, "Block count (sfv)");
    lock->add_option("--r", lock_r, "Vault size");
    lock->add_option("--poly", lock_poly, "Spread construction polynomial (sfv)");

    // ---- unlock --------------------------------------------------------
    auto* unlock = app.add_subcommand("unlock", "Recover a key from a vault");
    std::string unlock_vault, unlock_witness;
    unlock->add_option("--vault", unlock_vault, "Vault file")->required();
    unlock->add_option("--witness", unlock_witness, "Witness feature file")->required();

    // ---- analyze ---------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "Security estimates");
    std::uint64_t an_q = 2, an_r = 0;
    std::uint32_t an_k = 0, an_n = 0, an_t = 0;
    std::string an_sweep;
    analyze->add_option("--q", an_q)->required();
    analyze->add_option("--k", an_k)->required();
    analyze->add_option("--n", an_n)->required();
    analyze->add_option("--r", an_r)->required();
    analyze->add_option("--t", an_t)->required();
    analyze->add_option("--sweep-delta", an_sweep, "Write an alpha(delta) CSV here");

    // ---- attack ---------------------------------------------------------
    auto* attack = app.add_subcommand("attack", "Run an attack simulation");
    std::string atk_vault, atk_kind;
    std::uint32_t atk_delta = 0;
    std::uint64_t atk_trials = 100000, atk_seed = 0;
    attack->add_option("--vault", atk_vault, "Vault file")->required();
    attack->add_option("--kind", atk_kind, "subset or lindep")->required();
    attack->add_option("--delta", atk_delta, "Subset size (subset attack)");
    attack->add_option("--trials", atk_trials, "Trial budget");
    attack->add_option("--seed", atk_seed, "Attack seed");

    CLI11_PARSE(app, argc, argv);

    if (info->parsed()) {
        auto field = field_for(info_q);
        std::optional<sfv::Poly> poly;
        if (!info_poly.empty()) poly = sfv::Poly(field, parse_int_list(info_poly));
        auto code = sfv::SpreadCode::make(field, info_k, info_s, poly);
        json out;
        out["q"] = info_q;
        out["k"] = info_k;
        out["s"] = info_s;
        out["n"] = code->ambient();
        out["poly"] = code->modulus().coeffs();
        out["cardinality"] = code->cardinality().str();
        out["cardinality_log2"] = sfv::log2_big(code->cardinality());
        out["min_distance"] = code->min_distance();
        out["decode_radius"] = code->decode_radius();
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (lock->parsed()) {
        LockParams p;
        if (!lock_params.empty()) p = load_params_file(lock_params);
        if (lock_q) p.q = lock_q;
        if (lock_l) p.ell = lock_l;
        if (lock_k) p.k = lock_k;
        if (lock_s) p.s = lock_s;
        if (lock_r) p.r = lock_r;
        if (!lock_poly.empty()) p.poly = parse_int_list(lock_poly);
        if (!p.field) {
            if (!p.q) throw CliError("bad_args", "field size --q (or a params file) is required");
            p.field = field_for(p.q);
        }

        const sfv::RunConfig cfg{lock_seed, 0, 1ull << 16, lock_out};
        sfv::Rng rng(cfg.seed);
        sfv::Rng key_rng = rng.derive("key");
        if (lock_scheme == "pfv") {
            if (!p.ell) throw CliError("bad_args", "--l is required for pfv");
            const auto features = read_vectors(lock_features, 1);
            std::vector<std::uint32_t> flat;
            for (const auto& v : features) flat.push_back(v[0]);
            std::size_t r = p.r ? p.r : p.field->size();
            std::vector<std::uint32_t> coeffs(p.ell);
            for (auto& c : coeffs) c = p.field->random_code(key_rng);
            sfv::Poly key(p.field, coeffs);
            auto vault = sfv::pfv_lock(key, p.ell, flat, r, rng);
            write_file(cfg.output_path, sfv::vault_serialize(vault));
            std::cout << key_json_pfv(key, p.ell).dump() << "\n";
            return 0;
        }
        if (lock_scheme == "sfv") {
            if (!p.k || !p.s) throw CliError("bad_args", "--k and --s are required for sfv");
            std::optional<sfv::Poly> poly;
            if (!p.poly.empty()) poly = sfv::Poly(p.field, p.poly);
            auto code = sfv::SpreadCode::make(p.field, p.k, p.s, poly);
            const auto features = read_vectors(lock_features, p.k);
            const auto mode = sfv::sfv_mode_from_string(lock_mode);
            const auto key = code->random_codeword(key_rng);
            auto vault = sfv::sfv_lock(code, key, features, mode, p.r, rng);
            write_file(cfg.output_path, sfv::vault_serialize(vault));
            std::cout << key_json_sfv(code, key).dump() << "\n";
            return 0;
        }
        throw CliError("bad_args", "unknown scheme " + lock_scheme);
    }

    if (unlock->parsed()) {
        const auto parsed = sfv::vault_parse(read_file(unlock_vault));
        if (std::holds_alternative<sfv::PfvVault>(parsed)) {
            const auto& vault = std::get<sfv::PfvVault>(parsed);
            const auto lines = read_vectors(unlock_witness, 1);
            std::vector<std::uint32_t> witness;
            for (const auto& v : lines) witness.push_back(v[0]);
            auto key = pfv_unlock(vault, witness);
            if (!key) throw CliError("decode_failure", "witness too far from the enrolled set", 2);
            std::cout << key_json_pfv(*key, vault.ell).dump() << "\n";
            return 0;
        }
        const auto& vault = std::get<sfv::SfvVault>(parsed);
        const auto witness = read_vectors(unlock_witness, vault.code->block_dim());
        auto res = sfv_unlock(vault, witness);
        if (!res.key) throw CliError("decode_failure", "witness too far from the enrolled set", 2);
        std::cout << key_json_sfv(vault.code, *res.key).dump() << "\n";
        return 0;
    }

    if (analyze->parsed()) {
        const auto rep = sfv::analyze_parameters(an_q, an_k, an_n, an_r, an_t, !an_sweep.empty());
        json out;
        out["parameters"] = {{"q", rep.q}, {"k", rep.k}, {"n", rep.n}, {"r", rep.r}, {"t", rep.t}};
        out["key_space"] = rep.key_space.str();
        out["key_space_log2"] = rep.key_space_log2;
        out["delta0"] = rep.delta0 ? json(*rep.delta0) : json(nullptr);
        out["alpha_at_delta0"] =
            rep.alpha_at_delta0 ? rational_json(*rep.alpha_at_delta0) : json(nullptr);
        out["cost"] = rep.cost ? json{{"delta0", rep.cost->delta0},
                                      {"ops_per_trial", rep.cost->ops_per_trial},
                                      {"total", rep.cost->total}}
                               : json(nullptr);
        out["naive_rank_ops"] = rep.naive_rank_ops.str();
        if (!rep.sweep.empty()) {
            json sweep = json::array();
            for (const auto& row : rep.sweep) {
                sweep.push_back({{"delta", row.delta}, {"alpha", rational_json(row.alpha)}});
            }
            out["sweep"] = std::move(sweep);
            std::ostringstream csv;
            csv << "delta,alpha\n";
            for (const auto& row : rep.sweep) {
                csv << row.delta << "," << sfv::to_double(row.alpha) << "\n";
            }
            write_file(an_sweep, csv.str());
        }
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (attack->parsed()) {
        const auto parsed = sfv::vault_parse(read_file(atk_vault));
        if (!std::holds_alternative<sfv::SfvVault>(parsed)) {
            throw CliError("bad_args", "attacks target sfv vaults");
        }
        const auto& vault = std::get<sfv::SfvVault>(parsed);
        const sfv::RunConfig cfg{atk_seed, atk_trials, 1ull << 16, ""};
        if (atk_kind == "subset") {
            if (!atk_delta) throw CliError("bad_args", "--delta is required for the subset attack");
            const auto inst = sfv::attack_instance_from_vault(vault);
            const auto stats =
                sfv::simulate_subset_attack(inst, atk_delta, cfg.trial_budget, cfg.seed);
            json out;
            out["kind"] = "subset";
            out["delta"] = atk_delta;
            out["trials"] = stats.trials;
            out["successes"] = stats.successes;
            out["rank_passes"] = stats.rank_passes;
            out["mean_trials_to_success"] =
                stats.successes ? json(stats.mean_trials_to_success) : json(nullptr);
            out["predicted_mean"] = stats.predicted_mean ? json(*stats.predicted_mean) : json(nullptr);
            out["ratio"] = stats.ratio ? json(*stats.ratio) : json(nullptr);
            out["success_criterion"] =
                stats.scored_against_truth ? "ground_truth" : "unique_decode";
            out["budget_exhausted"] = stats.budget_exhausted;
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (atk_kind == "lindep") {
            const auto res = sfv::linear_dependency_attack(vault);
            json out;
            out["kind"] = "lindep";
            out["applicable"] = res.applicable;
            json findings = json::array();
            for (const auto& f : res.findings) {
                findings.push_back(
                    {{"target", f.target}, {"sources", f.sources}, {"coeffs", f.coeffs}});
            }
            out["findings"] = std::move(findings);
            std::cout << out.dump() << "\n";
            return 0;
        }
        throw CliError("bad_args", "unknown attack kind " + atk_kind);
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << json{{"error", e.code}, {"message", e.what()}}.dump() << "\n";
        return e.exit_code;
    } catch (const sfv::VaultIoError& e) {
        std::cerr << json{{"error", to_string(e.kind)}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "bad_args"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
