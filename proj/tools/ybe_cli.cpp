// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// ybe command line: eval, verify, classify, oracle, sweep.
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or configuration error.

#include <cctype>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ybe/ybe.h"

namespace {

using json = nlohmann::json;
using cd = std::complex<double>;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse complex number '" + whole + "'");
    }
    if (used != s.size()) throw UsageError("cannot parse complex number '" + whole + "'");
    return x;
}

// Accepts 1.5, -2, i, 2i, -0.5+0.9i, 1e-3-2j.
cd parse_complex(std::string s) {
    const std::string whole = s;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw UsageError("empty complex number");
    const char last = s.back();
    if (last != 'i' && last != 'j') return {parse_real(s, whole), 0.0};
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(s, whole)};
    return {parse_real(s.substr(0, split), whole), parse_real(s.substr(split), whole)};
}

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

struct HandleOptions {
    std::string family;
    std::string handle_file;
    int d = 1;
    int r = 1;
    std::string tau = "i";
    std::string a = "1";
    std::string b = "1";
    std::vector<std::string> rescale;  // c1,c2,c3,c4
    bool cybe = false;
};

std::string resolve_family(const HandleOptions& o, bool want_cybe) {
    const std::string& f = o.family;
    const bool c = o.cybe || want_cybe;
    if (f == "elliptic") return c ? "elliptic-cybe" : "elliptic-aybe";
    if (f == "trig1") return c ? "trig-cybe1" : "trig-aybe1";
    if (f == "trig2") return c ? "trig-cybe2" : "trig-aybe2";
    if (f == "kronecker") return "scalar-kronecker";
    if (f == "rational") return "scalar-rational";
    if (f == "trig") return "scalar-trig";
    return f;
}

json handle_descriptor(const HandleOptions& o, bool want_cybe) {
    json h;
    if (!o.handle_file.empty()) {
        std::ifstream in(o.handle_file);
        if (!in) throw UsageError("cannot open handle file '" + o.handle_file + "'");
        try {
            in >> h;
        } catch (const json::exception& e) {
            throw UsageError(std::string("bad handle file: ") + e.what());
        }
        return h;
    }
    if (o.family.empty()) throw UsageError("--family or --handle is required");
    h["family"] = resolve_family(o, want_cybe);
    h["d"] = o.d;
    h["r"] = o.r;
    h["tau"] = cjson(parse_complex(o.tau));
    h["a"] = cjson(parse_complex(o.a));
    h["b"] = cjson(parse_complex(o.b));
    if (!o.rescale.empty()) {
        if (o.rescale.size() != 4) throw UsageError("--rescale takes four complex numbers c1 c2 c3 c4");
        h["rescale"] = {{"c1", cjson(parse_complex(o.rescale[0]))},
                        {"c2", cjson(parse_complex(o.rescale[1]))},
                        {"c3", cjson(parse_complex(o.rescale[2]))},
                        {"c4", cjson(parse_complex(o.rescale[3]))}};
    }
    return h;
}

void add_handle_options(CLI::App* cmd, HandleOptions& o) {
    cmd->add_option("--family", o.family,
                     "elliptic, elliptic-aybe, elliptic-cybe, trig1, trig2, trig-aybe1, trig-aybe2, "
                     "trig-cybe1, trig-cybe2, scalar-kronecker, scalar-trig, scalar-rational");
    cmd->add_option("--handle", o.handle_file, "JSON handle descriptor file");
    cmd->add_option("--d", o.d, "elliptic matrix size d");
    cmd->add_option("--r", o.r, "elliptic rank r, coprime to d");
    cmd->add_option("--tau", o.tau, "modular parameter, e.g. i, 2i, 0.5+0.9i");
    cmd->add_option("--a", o.a, "scalar-rational coefficient a");
    cmd->add_option("--b", o.b, "scalar-rational coefficient b");
    cmd->add_option("--rescale", o.rescale, "c1 c2 c3 c4 applied as c1 exp(c2 u v) r(c3 u, c4 v)")->expected(4);
    cmd->add_flag("--cybe", o.cybe, "select the CYBE member of elliptic/trig1/trig2");
}

// ---- output ---------------------------------------------------------------

void add_complex_cells(std::vector<std::string>& head, std::vector<std::string>& row, const std::string& name,
                       const json& v) {
    head.push_back(name + "_re");
    head.push_back(name + "_im");
    std::ostringstream re, im;
    re.precision(17);
    im.precision(17);
    re << v[0].get<double>();
    im << v[1].get<double>();
    row.push_back(re.str());
    row.push_back(im.str());
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    if (v.is_number_float()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    return v.dump();
}

bool is_complex_cell(const json& v) { return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(); }

// Flattens one JSON record into header/value cells; complex pairs become _re/_im.
void flatten(const json& rec, std::vector<std::string>& head, std::vector<std::string>& row) {
    for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (it.key() == "points") continue;
        if (is_complex_cell(it.value())) {
            add_complex_cells(head, row, it.key(), it.value());
        } else if (it.value().is_object() && it.key() == "tensor") {
            const json& t = it.value();
            const int n = t.at("n").get<int>();
            const json& c = t.at("coeffs");
            size_t k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int ip = 0; ip < n; ++ip)
                        for (int jp = 0; jp < n; ++jp, ++k) {
                            add_complex_cells(head, row,
                                              "c" + std::to_string(i) + std::to_string(j) + std::to_string(ip) +
                                                  std::to_string(jp),
                                              c[k]);
                        }
        } else if (it.value().is_object()) {
            continue;
        } else {
            head.push_back(it.key());
            row.push_back(cell(it.value()));
        }
    }
}

std::string to_csv(const std::string& command, const json& res) {
    std::vector<json> records;
    if (command == "eval") {
        for (const json& r : res.at("results")) records.push_back(r);
    } else if (command == "verify") {
        for (const json& r : res.at("reports")) records.push_back(r);
    } else if (command == "classify") {
        json r = res.at("classification");
        if (res.contains("modular")) {
            for (auto it = res.at("modular").begin(); it != res.at("modular").end(); ++it) r[it.key()] = it.value();
        }
        records.push_back(r);
    } else if (command == "oracle") {
        json r = res.at("comparison");
        if (res.contains("lambda_mu_dependence_failure")) {
            r["lambda_mu_dependence_failure"] = res.at("lambda_mu_dependence_failure");
        }
        records.push_back(r);
    } else {
        for (const json& r : res.at("rows")) records.push_back(r);
    }
    // Header is the union of keys in first-seen order.
    std::vector<std::string> header;
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (const json& rec : records) {
        std::vector<std::string> h, v;
        flatten(rec, h, v);
        std::vector<std::pair<std::string, std::string>> row;
        for (size_t k = 0; k < h.size(); ++k) {
            if (std::find(header.begin(), header.end(), h[k]) == header.end()) header.push_back(h[k]);
            row.emplace_back(h[k], v[k]);
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    for (size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t k = 0; k < header.size(); ++k) {
            if (k) os << ",";
            for (const auto& [key, val] : row) {
                if (key == header[k]) {
                    os << val;
                    break;
                }
            }
        }
        os << "\n";
    }
    return os.str();
}

int run(const std::string& command, const json& request, const std::string& out_path, bool csv,
        bool show_points) {
    char* response = nullptr;
    int exit_code = 0;
    const std::string body = request.dump();
    const ybe_status st = ybe_command(command.c_str(), body.c_str(), &response, &exit_code);
    if (st != YBE_OK) {
        std::cerr << "ybe " << command << ": " << ybe_last_error() << "\n";
        const bool config = st == YBE_ERR_INVALID_ARGUMENT || st == YBE_ERR_PARSE || st == YBE_ERR_SIZE_MISMATCH;
        return config ? 2 : 1;
    }
    json res = json::parse(response);
    ybe_string_free(response);
    if (!show_points && res.contains("reports")) {
        for (json& r : res["reports"]) r.erase("points");
    }
    std::string text = csv ? to_csv(command, res) : res.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "ybe: cannot write '" << out_path << "'\n";
            return 2;
        }
        out << text;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Yang-Baxter solution toolkit: evaluation, verification, classification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file supplying the same keys as the flags");

    std::string out_path;
    bool csv = false;
    std::uint64_t seed = 20240607;
    app.add_option("--out,-o", out_path, "output file (default stdout)");
    app.add_flag("--csv", csv, "write a comma-separated table instead of JSON");
    app.add_option("--seed", seed, "sampling seed");
    bool show_points = false;
    app.add_flag("--show-points", show_points, "keep the sampled points in verify reports");

    HandleOptions ho;

    auto* eval = app.add_subcommand("eval", "evaluate a solution at points");
    add_handle_options(eval, ho);
    std::vector<std::string> points, vs, mus, lambdas;
    eval->add_option("--point", points, "u,v pair (AYBE families)");
    eval->add_option("--v", vs, "spectral parameter v (CYBE families)");
    eval->add_option("--mu", mus, "multiplicative mu = exp(v)");
    eval->add_option("--lambda", lambdas, "multiplicative lambda = exp(u), paired with --mu");

    auto* verify = app.add_subcommand("verify", "run the residual suite");
    add_handle_options(verify, ho);
    std::vector<std::string> checks;
    int samples = 25;
    double perturb = 0.0;
    double tol_aybe = 1e-8, tol_cybe = 1e-8, tol_unit = 1e-10;
    verify->add_option("--check", checks, "aybe, cybe, commutator, unitarity, nondegeneracy (repeatable)");
    verify->add_option("--samples", samples, "random samples per check");
    verify->add_option("--perturb", perturb, "add a seeded random tensor of this size (negative control)");
    verify->add_option("--tol-aybe", tol_aybe);
    verify->add_option("--tol-cybe", tol_cybe);
    verify->add_option("--tol-unitarity", tol_unit);

    auto* classify = app.add_subcommand("classify", "classify a scalar solution by C = c5^2/c3^3");
    add_handle_options(classify, ho);

    auto* oracle = app.add_subcommand("oracle", "compare the nodal-curve construction with the closed forms");
    int curve_case = 1;
    int oracle_samples = 20;
    std::string triv = "sqrt", ev = "matrix";
    oracle->add_option("--case", curve_case, "1 or 2")->check(CLI::IsMember({1, 2}));
    oracle->add_option("--samples", oracle_samples, "random parameter sets");
    oracle->add_option("--trivialization", triv, "sqrt or constant")->check(CLI::IsMember({"sqrt", "constant"}));
    oracle->add_option("--ev", ev, "matrix or structural")->check(CLI::IsMember({"matrix", "structural"}));

    auto* sweep = app.add_subcommand("sweep", "tabulate a quantity over a parameter grid");
    add_handle_options(sweep, ho);
    std::string quantity, grid, sweep_u = "0.3+0.1i";
    sweep->add_option("--quantity", quantity, "C, j-deviation, rank, unitarity, norm, aybe")->required();
    sweep->add_option("--grid", grid, "start:stop:count with complex endpoints, or a comma list")->required();
    sweep->add_option("--u", sweep_u, "fixed u for rank/unitarity/norm sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json req;
        req["seed"] = seed;
        std::string command;
        if (eval->parsed()) {
            command = "eval";
            const bool want_cybe = !vs.empty() || (!mus.empty() && lambdas.empty());
            req["handle"] = handle_descriptor(ho, want_cybe);
            json pts = json::array();
            for (const std::string& p : points) {
                const auto parts = split(p, ',');
                if (parts.size() != 2) throw UsageError("--point expects u,v");
                pts.push_back(json::array({cjson(parse_complex(parts[0])), cjson(parse_complex(parts[1]))}));
            }
            for (const std::string& v : vs) pts.push_back(cjson(parse_complex(v)));
            if (!lambdas.empty() && lambdas.size() != mus.size()) {
                throw UsageError("--lambda and --mu must be given in pairs");
            }
            for (size_t k = 0; k < mus.size(); ++k) {
                const cd v = std::log(parse_complex(mus[k]));
                if (lambdas.empty()) {
                    pts.push_back(cjson(v));
                } else {
                    pts.push_back(json::array({cjson(std::log(parse_complex(lambdas[k]))), cjson(v)}));
                }
            }
            req["points"] = pts;
        } else if (verify->parsed()) {
            command = "verify";
            const bool only_cybe = checks.size() == 1 && checks.front() == "cybe";
            req["handle"] = handle_descriptor(ho, only_cybe);
            if (only_cybe) checks.clear();
            if (!checks.empty()) req["checks"] = checks;
            req["samples"] = samples;
            req["tolerance"] = {{"aybe", tol_aybe}, {"cybe", tol_cybe}, {"unitarity", tol_unit}};
            if (perturb != 0.0) req["perturb"] = perturb;
        } else if (classify->parsed()) {
            command = "classify";
            req["handle"] = handle_descriptor(ho, false);
        } else if (oracle->parsed()) {
            command = "oracle";
            req["case"] = curve_case;
            req["samples"] = oracle_samples;
            req["trivialization"] = triv;
            req["ev"] = ev;
        } else {
            command = "sweep";
            req["quantity"] = quantity;
            if (grid.find(':') != std::string::npos) {
                const auto parts = split(grid, ':');
                if (parts.size() != 3) throw UsageError("--grid expects start:stop:count");
                req["grid"] = {{"start", cjson(parse_complex(parts[0]))},
                               {"stop", cjson(parse_complex(parts[1]))},
                               {"count", std::stoi(parts[2])}};
            } else {
                json g = json::array();
                for (const std::string& p : split(grid, ',')) g.push_back(cjson(parse_complex(p)));
                req["grid"] = g;
            }
            req["u"] = cjson(parse_complex(sweep_u));
            if (quantity != "C" && quantity != "j-deviation") {
                if (!ho.family.empty() || !ho.handle_file.empty()) req["handle"] = handle_descriptor(ho, false);
            }
        }
        return run(command, req, out_path, csv, show_points);
    } catch (const UsageError& e) {
        std::cerr << "ybe: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ybe: " << e.what() << "\n";
        return 2;
    }
}
