// Copyright 2026 The bechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bechain/cli.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "bechain/appgen.h"
#include "bechain/oaa.h"
#include "bechain/report.h"
#include "bechain/rng.h"
#include "json.hpp"

namespace bechain {

namespace {

using Task = std::function<std::vector<Cell>()>;

struct Experiment {
    Table table;
    std::vector<Task> tasks;
    std::vector<std::string> notes;
    std::size_t pass_column = 0;
};

std::vector<std::vector<Cell>> run_tasks(const std::vector<Task> &tasks) {
    std::vector<std::vector<Cell>> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                rows[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::uint64_t row_seed(const RunConfig &cfg, std::uint64_t trial) { return trial_seed(cfg.seed, trial); }

std::vector<BlockEncoding> near_identity_set(int k, int n, int a, double eta, std::uint64_t seed) {
    std::vector<BlockEncoding> out;
    for (int i = 0; i < k; ++i) {
        out.push_back(random_near_identity(n, a, eta, trial_seed(seed, static_cast<std::uint64_t>(i))));
    }
    return out;
}

std::vector<BlockEncoding> random_set(int k, int n, int a, std::uint64_t seed) {
    std::vector<BlockEncoding> out;
    for (int i = 0; i < k; ++i) {
        out.push_back(random_block_encoding(n, a, trial_seed(seed, static_cast<std::uint64_t>(i))));
    }
    return out;
}

nlohmann::json load_config(const std::string &path) {
    if (path.empty()) {
        return nlohmann::json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("invalid config JSON: ") + e.what());
    }
}

CMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw UsageError("matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    CMatrix m(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw UsageError("matrix must be square");
        }
        for (Eigen::Index k = 0; k < rows; ++k) {
            const auto &e = row[static_cast<std::size_t>(k)];
            if (e.is_number()) {
                m(i, k) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw UsageError("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

Experiment macg_sweep(const RunConfig &cfg) {
    Experiment ex;
    ex.table.header = kErrorReportHeader;
    ex.pass_column = 7;
    for (int k : cfg.K) {
        for (int p : cfg.p) {
            if (!macg_regime_ok(k, p, cfg.c)) {
                ex.notes.push_back("K=" + std::to_string(k) + " p=" + std::to_string(p) +
                                   ": bound regime not satisfied; e_bound is the unguarded closed form");
            }
            for (int t = 0; t < cfg.trials; ++t) {
                ex.tasks.push_back([=, &cfg]() {
                    std::uint64_t seed = row_seed(cfg, static_cast<std::uint64_t>(t));
                    auto encs = near_identity_set(k, cfg.n, cfg.a, cfg.c / k, seed);
                    ErrorReport r;
                    r.K = k;
                    r.m = p;
                    r.p = p;
                    r.c = cfg.c;
                    r.eta_max = deviation_profile(encs).eta_max;
                    r.e_measured = gadget_error_exact(gadget_pmacg(encs, p), block_product(encs));
                    r.e_bound = macg_bound_formula(k, p, cfg.c);
                    r.seed = seed;
                    return error_report_row(r);
                });
            }
        }
    }
    return ex;
}

Experiment ecg_verify(const RunConfig &cfg) {
    Experiment ex;
    ex.table.header = kErrorReportHeader;
    ex.pass_column = 7;
    for (int k : cfg.K) {
        for (int t = 0; t < cfg.trials; ++t) {
            ex.tasks.push_back([=, &cfg]() {
                std::uint64_t seed = row_seed(cfg, static_cast<std::uint64_t>(t));
                auto encs = random_set(k, cfg.n, cfg.a, seed);
                MCMCircuit circ = gadget_lw19(encs);
                ErrorReport r;
                r.K = k;
                r.m = circ.m;
                r.eta_max = deviation_profile(encs).eta_max;
                r.e_measured = gadget_error_exact(circ, block_product(encs));
                r.e_bound = 1e-11;
                r.seed = seed;
                return error_report_row(r);
            });
        }
    }
    return ex;
}

Experiment uncompute_sweep(const RunConfig &cfg) {
    Experiment ex;
    ex.table.header = kUncomputeReportHeader;
    ex.pass_column = 6;
    for (double eps : cfg.eps) {
        for (int t = 0; t < cfg.trials; ++t) {
            ex.tasks.push_back([=, &cfg]() {
                std::uint64_t seed = row_seed(cfg, static_cast<std::uint64_t>(t));
                Rng rng(seed);
                double norm = (1.0 - cfg.delta) * rng.uniform(0.5, 1.0);
                CMatrix h = random_hermitian(Eigen::Index{1} << cfg.n, norm, rng);
                BlockEncoding vh = scramble_ancillas(dilate_hermitian(h), cfg.a, rng.next());
                UncomputeReport rep;
                bool pass = true;
                try {
                    rep = uncompute_hermitian(vh, cfg.delta, eps).report;
                } catch (const AccuracyError &e) {
                    rep.eps_requested = eps;
                    rep.delta = cfg.delta;
                    rep.eps_measured = e.eps_measured;
                    pass = false;
                }
                return uncompute_report_row(rep, pass, seed);
            });
        }
    }
    return ex;
}

Experiment lb_probe(const RunConfig &cfg) {
    Experiment ex;
    ex.table.header = kProbeReportHeader;
    ex.pass_column = 5;
    for (int k : cfg.K) {
        for (int t = 0; t < cfg.trials; ++t) {
            ex.tasks.push_back([=, &cfg]() {
                std::uint64_t seed = row_seed(cfg, static_cast<std::uint64_t>(t));
                auto encs = random_set(k, cfg.n, cfg.a, seed);
                ProbeResult pr = lower_bound_probe_detailed(encs, cfg.m, cfg.restarts, seed);
                std::vector<double> v = pr.per_restart;
                std::sort(v.begin(), v.end());
                double median = v[v.size() / 2];
                bool feasible = cfg.m >= ceil_log2(k);
                bool pass = feasible ? pr.best <= 1e-8 : pr.best >= 1e-3;
                return std::vector<Cell>{static_cast<std::int64_t>(k), static_cast<std::int64_t>(cfg.m),
                                         static_cast<std::int64_t>(cfg.restarts), pr.best, median, pass, seed};
            });
        }
    }
    return ex;
}

Experiment oaa_demo(const RunConfig &cfg) {
    Experiment ex;
    ex.table.header = kBoostReportHeader;
    ex.pass_column = 8;
    for (int k : cfg.K) {
        for (int p : cfg.p) {
            for (int t = 0; t < cfg.trials; ++t) {
                ex.tasks.push_back([=, &cfg]() {
                    std::uint64_t seed = row_seed(cfg, static_cast<std::uint64_t>(t));
                    auto encs = near_identity_set(k, cfg.n, cfg.a, cfg.c / k, seed);
                    MCMCircuit circ = gadget_pmacg(encs, p);
                    CMatrix target = block_product(encs);
                    double eps = gadget_error_exact(circ, target);
                    Rng rng(trial_seed(seed, 0xA11CE));
                    CVector psi(Eigen::Index{1} << cfg.n);
                    for (Eigen::Index i = 0; i < psi.size(); ++i) {
                        psi(i) = rng.complex_normal();
                    }
                    psi.normalize();
                    OAAReport rep = oaa_ambe(circ, target, psi);
                    bool pass = rep.fidelity >= 1.0 - eps * eps - 1e-12 && rep.alpha_after * rep.alpha_after >= 0.8;
                    return std::vector<Cell>{static_cast<std::int64_t>(k), static_cast<std::int64_t>(p), cfg.c, eps,
                                             rep.alpha_before, static_cast<std::int64_t>(rep.k), rep.alpha_after,
                                             rep.fidelity, pass, seed};
                });
            }
        }
    }
    return ex;
}

ErrorReport sequence_report(const Sequence &seq, std::uint64_t seed, std::vector<std::string> &notes) {
    ErrorReport r;
    r.K = static_cast<int>(seq.encodings.size());
    r.m = 1;
    r.p = 1;
    r.c = seq.c;
    r.eta_max = seq.profile.eta_max;
    r.e_measured = gadget_error_exact(gadget_pmacg(seq.encodings, 1), block_product(seq.encodings));
    r.e_bound = macg_bound_formula(r.K, 1, seq.c);
    r.seed = seed;
    notes.push_back(std::string("bound regime ") + (macg_regime_ok(r.K, 1, seq.c) ? "satisfied" : "not satisfied") +
                    " for K=" + std::to_string(r.K) + " c=" + format_double(seq.c));
    return r;
}

Experiment gen_trotter(const RunConfig &cfg) {
    nlohmann::json j = load_config(cfg.config_path);
    TrotterSpec spec;
    if (j.contains("terms")) {
        for (const auto &t : j.at("terms")) {
            spec.terms.push_back(matrix_from_json(t));
        }
    } else {
        spec.terms = {0.5 * pauli_x(), 0.5 * pauli_z()};
    }
    spec.t = j.value("t", 1.0);
    spec.K = j.value("K", cfg.K.empty() ? 16 : cfg.K.front());
    Experiment ex;
    ex.table.header = kErrorReportHeader;
    ex.pass_column = 7;
    Sequence seq = trotter_sequence(spec);
    ex.table.add(error_report_row(sequence_report(seq, cfg.seed, ex.notes)));
    return ex;
}

Experiment gen_dyson(const RunConfig &cfg) {
    nlohmann::json j = load_config(cfg.config_path);
    std::string family = j.value("family", std::string("cosine"));
    std::map<std::string, double> params;
    if (j.contains("params")) {
        for (const auto &[key, val] : j.at("params").items()) {
            params[key] = val.get<double>();
        }
    }
    CMatrix h = j.contains("h") ? matrix_from_json(j.at("h")) : CMatrix();
    auto [a_of_t, lambda] = dyson_family(family, params, h);
    DysonSpec spec;
    spec.A_of_t = a_of_t;
    spec.lambda = j.value("lambda", lambda);
    spec.T = j.value("T", 1.0);
    spec.K = j.value("K", cfg.K.empty() ? 16 : cfg.K.front());
    spec.micro_steps = j.value("micro_steps", 256);
    Experiment ex;
    ex.table.header = kErrorReportHeader;
    ex.pass_column = 7;
    Sequence seq = dyson_sequence(spec);
    ex.table.add(error_report_row(sequence_report(seq, cfg.seed, ex.notes)));
    return ex;
}

void print_summary(const Table &table, std::ostream &out) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(table.header.size());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        width[i] = table.header[i].size();
    }
    for (const auto &row : table.rows) {
        std::ostringstream line;
        Table one{table.header, {row}};
        one.write_csv(line);
        std::string text = line.str();
        text = text.substr(text.find('\n') + 1);
        text.pop_back();
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) {
            parts.push_back(part);
        }
        parts.resize(table.header.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            width[i] = std::max(width[i], parts[i].size());
        }
        cells.push_back(std::move(parts));
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << std::setw(static_cast<int>(width[i]) + 2) << table.header[i];
    }
    out << "\n";
    for (const auto &row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << std::setw(static_cast<int>(width[i]) + 2) << row[i];
        }
        out << "\n";
    }
}

}  // namespace

const std::vector<std::string> &subcommands() {
    static const std::vector<std::string> names = {"uncompute", "macg-sweep", "ecg-verify", "lb-probe",
                                                   "oaa-demo",  "gen-trotter", "gen-dyson"};
    return names;
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string &s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception &) {
            throw UsageError("invalid integer list: " + text);
        }
        if (used != s.size()) {
            throw UsageError("invalid integer list: " + text);
        }
        return v;
    };
    while (std::getline(ss, item, ',')) {
        auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        int lo = to_int(item.substr(0, dots));
        int hi = to_int(item.substr(dots + 2));
        if (hi < lo) {
            throw UsageError("invalid range: " + item);
        }
        for (int v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw UsageError("empty list: " + text);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw UsageError("invalid number list: " + text);
        }
        if (used != item.size()) {
            throw UsageError("invalid number list: " + text);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty list: " + text);
    }
    return out;
}

RunConfig resolve_defaults(RunConfig cfg) {
    const auto &names = subcommands();
    if (std::find(names.begin(), names.end(), cfg.subcommand) == names.end()) {
        throw UsageError("unknown subcommand: " + cfg.subcommand);
    }
    const std::string &s = cfg.subcommand;
    if (cfg.K.empty()) {
        if (s == "macg-sweep") {
            cfg.K = {8, 16, 32};
        } else if (s == "ecg-verify") {
            cfg.K = {2, 3, 4, 5, 6, 7, 8};
        } else if (s == "lb-probe") {
            cfg.K = {2, 3, 4};
        } else if (s == "oaa-demo") {
            cfg.K = {8};
        }
    }
    if (cfg.p.empty()) {
        cfg.p = s == "macg-sweep" ? std::vector<int>{1, 2} : std::vector<int>{1};
    }
    if (cfg.eps.empty()) {
        cfg.eps = {1e-2};
    }
    if (s == "uncompute" && cfg.a < 1) {
        throw UsageError("--a must be at least 1");
    }
    if (cfg.trials < 1 || cfg.restarts < 1) {
        throw UsageError("--trials and --restarts must be at least 1");
    }
    if (cfg.n < 0 || cfg.a < 0 || cfg.n + cfg.a > 8 || cfg.n + cfg.a < 1) {
        throw UsageError("--n and --a must be non-negative with 1 <= n + a <= 8");
    }
    if (!(cfg.c > 0.0)) {
        throw UsageError("--c must be positive");
    }
    if (!(cfg.delta > 0.0 && cfg.delta <= 1.0)) {
        throw UsageError("--delta must lie in (0, 1]");
    }
    for (double e : cfg.eps) {
        if (!(e > 0.0 && e < 1.0)) {
            throw UsageError("--eps values must lie in (0, 1)");
        }
    }
    for (int k : cfg.K) {
        if (k < 1 || k > 64) {
            throw UsageError("--K values must lie in [1, 64]");
        }
        if (k < 2 && s != "gen-trotter" && s != "gen-dyson") {
            throw UsageError("--K values must be at least 2");
        }
        if (s == "lb-probe" && k > 4) {
            throw UsageError("lb-probe supports K <= 4");
        }
        if (s == "macg-sweep" || s == "oaa-demo") {
            if (cfg.c / k >= 1.0) {
                throw UsageError("c / K must be below 1");
            }
        }
    }
    for (int p : cfg.p) {
        if (p < 1 || p > 6) {
            throw UsageError("--p values must lie in [1, 6]");
        }
    }
    if (s == "lb-probe" && (cfg.m < 1 || cfg.m > 2)) {
        throw UsageError("lb-probe supports m in {1, 2}");
    }
    return cfg;
}

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("BECHAIN_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) {
            return static_cast<unsigned>(std::min<long>(v, 256));
        }
    }
    return hw;
}

int run(const RunConfig &config_in, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    try {
        cfg = resolve_defaults(config_in);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    Experiment ex;
    try {
        const std::string &s = cfg.subcommand;
        if (s == "macg-sweep") {
            ex = macg_sweep(cfg);
        } else if (s == "ecg-verify") {
            ex = ecg_verify(cfg);
        } else if (s == "uncompute") {
            ex = uncompute_sweep(cfg);
        } else if (s == "lb-probe") {
            ex = lb_probe(cfg);
        } else if (s == "oaa-demo") {
            ex = oaa_demo(cfg);
        } else if (s == "gen-trotter") {
            ex = gen_trotter(cfg);
        } else {
            ex = gen_dyson(cfg);
        }
        for (auto &row : run_tasks(ex.tasks)) {
            ex.table.add(std::move(row));
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailedRows;
    }

    std::size_t failed = 0;
    for (const auto &row : ex.table.rows) {
        const Cell &c = row[ex.pass_column];
        if (!std::holds_alternative<bool>(c) || !std::get<bool>(c)) {
            ++failed;
        }
    }
    auto write = [&](std::ostream &os) {
        if (cfg.format == OutputFormat::json) {
            ex.table.write_json(os);
        } else {
            ex.table.write_csv(os);
        }
    };
    if (cfg.out_path.empty()) {
        write(out);
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "usage error: cannot write " << cfg.out_path << "\n";
            return kExitUsage;
        }
        write(file);
        print_summary(ex.table, out);
        out << "wrote " << ex.table.rows.size() << " rows to " << cfg.out_path << "\n";
    }
    std::ostream &status = cfg.out_path.empty() ? err : out;
    for (const auto &note : ex.notes) {
        status << "note: " << note << "\n";
    }
    if (failed > 0) {
        status << failed << " of " << ex.table.rows.size() << " rows failed\n";
        return kExitFailedRows;
    }
    status << "all " << ex.table.rows.size() << " rows passed\n";
    return kExitOk;
}

}  // namespace bechain
