#include "umc/harness.hpp"

#include "umc/dense.hpp"
#include "umc/graphs.hpp"
#include "umc/io.hpp"
#include "umc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace umc {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Fixed-size task list executed by a small pool; each task writes only its
// own slot, so collection order never depends on scheduling.
void run_pool(size_t task_count, int threads,
              const std::function<void(size_t)>& task) {
    if (threads <= 1) {
        for (size_t t = 0; t < task_count; ++t) task(t);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<size_t>(static_cast<size_t>(threads), task_count);
    pool.reserve(static_cast<size_t>(nthreads));
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
            for (size_t t = next.fetch_add(1); t < task_count; t = next.fetch_add(1))
                task(t);
        });
    for (auto& th : pool) th.join();
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

std::vector<double> default_p_fractions() {
    std::vector<double> f;
    for (int j = 1; j <= 9; ++j) f.push_back(j / 10.0);
    return f;
}

uint64_t trial_seed(uint64_t seed0, size_t budget_idx, size_t p_idx,
                    size_t trial_idx) {
    return mix_seed(seed0, budget_idx, p_idx, trial_idx);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.n < 2 || spec.r < 1 || spec.budgets.empty() || spec.trials < 1)
        throw std::invalid_argument("run_sweep: invalid spec");
    const std::vector<double> fracs =
        spec.p_fractions.empty() ? default_p_fractions() : spec.p_fractions;
    std::vector<double> sigmas = spec.noise_sigma;
    if (sigmas.empty()) sigmas.push_back(0.0);

    struct Cell {
        size_t bi, pi, si, ti;
    };
    std::vector<Cell> cells;
    for (size_t bi = 0; bi < spec.budgets.size(); ++bi)
        for (size_t pi = 0; pi < fracs.size(); ++pi)
            for (size_t si = 0; si < sigmas.size(); ++si)
                for (size_t ti = 0; ti < static_cast<size_t>(spec.trials); ++ti)
                    cells.push_back(Cell{bi, pi, si, ti});

    std::vector<SweepRow> rows(cells.size());
    run_pool(cells.size(), resolve_threads(spec.threads), [&](size_t idx) {
        const Cell& c = cells[idx];
        SweepRow& row = rows[idx];
        row.budget = spec.budgets[c.bi];
        row.p = row.budget * fracs[c.pi];
        row.q = row.budget - row.p;
        row.noise_sigma = sigmas[c.si];
        row.seed = trial_seed(spec.seed0, c.bi, c.pi, c.ti);
        try {
            auto rng = make_rng(mix_seed(row.seed, 0xfac7ULL));
            const Matrix M = gaussian_matrix(spec.n, spec.r, rng) *
                             gaussian_matrix(spec.n, spec.r, rng).transpose();

            BlockModelParams bm;
            bm.n1 = bm.n2 = spec.n;
            bm.p = row.p;
            bm.q = row.q;
            bm.seed = mix_seed(row.seed, 0x0b10ULL);
            const SampleSet omega = gen_block_model(bm);
            row.relative_gap = spectrum(omega).relative_gap;

            Matrix D = M;
            if (row.noise_sigma > 0.0) {
                auto nrng = make_rng(mix_seed(row.seed, 0x01seULL, c.si));
                Matrix Z = gaussian_matrix(spec.n, spec.n, nrng);
                Z *= row.noise_sigma * M.norm() / Z.norm();
                D += Z;
            }
            const DenseMatrix truth{M};
            const DenseMatrix observed = project_omega(DenseMatrix(D), omega);

            SolverConfig cfg = spec.solver;
            if (row.noise_sigma > 0.0) cfg.max_rank = spec.r;
            const SolveResult res = solve_nuclear_norm(observed, omega, cfg, &truth);

            row.success = res.success;
            row.rel_error = res.rel_error_vs_truth.value_or(
                std::numeric_limits<double>::quiet_NaN());
            row.iterations = res.iterations;
            row.wall_time = res.wall_time;
            row.converged = res.converged;
            const double nuc_m = nuclear_norm(M);
            row.nuclear_margin = (nuclear_norm(res.X.mat()) - nuc_m) / nuc_m;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.success = false;
            row.rel_error = std::numeric_limits<double>::quiet_NaN();
        }
    });

    if (!spec.output_path.empty()) io::save_text(spec.output_path, sweep_csv(rows));
    return rows;
}

std::vector<RealRow> run_real(const DenseMatrix& T, const RealSpec& spec) {
    if (spec.budgets.empty() || spec.trials < 1)
        throw std::invalid_argument("run_real: invalid spec");
    const std::vector<double> fracs =
        spec.p_fractions.empty() ? default_p_fractions() : spec.p_fractions;

    const Vector sv = singular_values(T.mat());
    const double floor = sv.size() > 1 && sv(0) > 0.0 ? sv(1) / sv(0) : 0.0;
    const double t_spec = sv(0);
    const double t_frob = T.mat().norm();

    struct Cell {
        size_t bi, pi, ti;
    };
    std::vector<Cell> cells;
    for (size_t bi = 0; bi < spec.budgets.size(); ++bi)
        for (size_t pi = 0; pi < fracs.size(); ++pi)
            for (size_t ti = 0; ti < static_cast<size_t>(spec.trials); ++ti)
                cells.push_back(Cell{bi, pi, ti});

    std::vector<RealRow> rows(cells.size());
    run_pool(cells.size(), resolve_threads(spec.threads), [&](size_t idx) {
        const Cell& c = cells[idx];
        RealRow& row = rows[idx];
        row.budget = spec.budgets[c.bi];
        row.p = row.budget * fracs[c.pi];
        row.q = row.budget - row.p;
        row.seed = trial_seed(spec.seed0, c.bi, c.pi, c.ti);
        row.rank1_floor = floor;
        try {
            BlockModelParams bm;
            bm.n1 = T.rows();
            bm.n2 = T.cols();
            bm.p = row.p;
            bm.q = row.q;
            bm.seed = mix_seed(row.seed, 0x0b10ULL);
            const SampleSet omega = gen_block_model(bm);
            row.relative_gap = spectrum(omega).relative_gap;

            const DenseMatrix observed = project_omega(T, omega);
            const SolveResult res = solve_nuclear_norm(observed, omega, spec.solver, &T);
            row.spectral_error = spectral_norm(res.X.mat() - T.mat()) / t_spec;
            row.frobenius_error = (res.X.mat() - T.mat()).norm() / t_frob;
            row.iterations = res.iterations;
            row.wall_time = res.wall_time;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.spectral_error = std::numeric_limits<double>::quiet_NaN();
        }
    });

    if (!spec.output_path.empty()) io::save_text(spec.output_path, real_csv(rows));
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "# umc-sweep-csv v1: budget,p,q,seed,relative_gap,success,rel_error,"
           "iterations,wall_time,noise_sigma,converged,nuclear_margin,error\n";
    for (const auto& r : rows) {
        out << io::format_real(r.budget) << ',' << io::format_real(r.p) << ','
            << io::format_real(r.q) << ',' << r.seed << ','
            << io::format_real(r.relative_gap) << ',' << (r.success ? 1 : 0) << ','
            << io::format_real(r.rel_error) << ',' << r.iterations << ','
            << io::format_real(r.wall_time) << ',' << io::format_real(r.noise_sigma)
            << ',' << (r.converged ? 1 : 0) << ',' << io::format_real(r.nuclear_margin)
            << ',' << sanitize(r.error) << '\n';
    }
    return out.str();
}

std::string real_csv(const std::vector<RealRow>& rows) {
    std::ostringstream out;
    out << "# umc-real-csv v1: budget,p,q,seed,relative_gap,spectral_error,"
           "frobenius_error,rank1_floor,iterations,wall_time,error\n";
    for (const auto& r : rows) {
        out << io::format_real(r.budget) << ',' << io::format_real(r.p) << ','
            << io::format_real(r.q) << ',' << r.seed << ','
            << io::format_real(r.relative_gap) << ','
            << io::format_real(r.spectral_error) << ','
            << io::format_real(r.frobenius_error) << ','
            << io::format_real(r.rank1_floor) << ',' << r.iterations << ','
            << io::format_real(r.wall_time) << ',' << sanitize(r.error) << '\n';
    }
    return out.str();
}

}  // namespace umc
