// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qcorr/absolute.hpp"
#include "qcorr/criteria.hpp"
#include "qcorr/report.hpp"

using namespace qcorr;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0.0;
    for (auto& x : v) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
    }
    for (auto& x : v) x /= s;
    return v;
}

DensityMatrix random_state(Rng& rng) { return random_density({2, 2}, 1 + static_cast<int>(rng.index(4)), rng); }

double linspace(double a, double b, int n, int i) { return a + (b - a) * i / (n - 1); }

double werner_nnce_root() {
    auto f = [](double w) { return 3 * (1 - w) * std::log2(1 - w) + (1 + 3 * w) * std::log2(1 + 3 * w) - 4; };
    double lo = 0.5, hi = 0.9;
    for (int i = 0; i < 200; ++i) ((f(0.5 * (lo + hi)) < 0) ? lo : hi) = 0.5 * (lo + hi);
    return 0.5 * (lo + hi);
}

ThresholdResult werner_threshold(const char* property) {
    return bisect_threshold({Family::Werner, "w", 0.0}, 0.0, 1.0, property, 1e-9);
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    const double sep = werner_threshold("separable").boundary;
    const double steer = werner_threshold("unsteerable3").boundary;
    const double local = werner_threshold("local").boundary;
    const double nnce = werner_threshold("nnce").boundary;
    const double root = werner_nnce_root();
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = std::abs(sep - 1.0 / 3) <= 1e-6 && std::abs(steer - 1 / std::sqrt(3.0)) <= 1e-6 &&
             std::abs(local - 1 / std::sqrt(2.0)) <= 1e-6 && std::abs(nnce - 0.7476) <= 1e-3 &&
             std::abs(nnce - root) <= 1e-6 && dt < 5.0;
    o.detail = fmt("separable %.9f, unsteerable3 %.9f, local %.9f, nnce %.9f (root %.9f), %.2fs", sep, steer, local,
                   nnce, root, dt);
    return o;
}

Outcome criterion2() {
    Outcome o;
    double worst = 0.0;
    for (const char* p : {"separable", "unsteerable3", "local", "nnce"}) {
        const double a = werner_threshold(p).boundary;
        const double b = werner_threshold(("abs_" + std::string(p)).c_str()).boundary;
        worst = std::max(worst, std::abs(a - b));
    }
    o.pass = worst <= 1e-4;
    o.detail = fmt("max |ordinary - absolute| = %.3g", worst);
    return o;
}

Outcome criterion3() {
    const FamilySlice slice{Family::Gisin, "lambda", kPi / 4};
    const double steer = bisect_threshold(slice, 0.0, 1.0, "abs_unsteerable3", 1e-9).boundary;
    const double local = bisect_threshold(slice, 0.0, 1.0, "abs_local", 1e-9).boundary;
    const double nnce = bisect_threshold(slice, 0.0, 1.0, "abs_nnce", 1e-9).boundary;
    int holds = 0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const Spectrum s = gisin(linspace(0, 1, 50, i), linspace(0, kPi / 2, 50, j)).spectrum();
            holds += absolutely_separable_2xn(s, 2).holds ? 1 : 0;
            holds += absolutely_zero_discord(s).holds ? 1 : 0;
            holds += absolutely_product(s).holds ? 1 : 0;
        }
    Outcome o;
    o.pass = std::abs(steer - 2.0 / 3) <= 1e-6 && std::abs(local - 1 / std::sqrt(2.0)) <= 1e-6 &&
             std::abs(nnce - 0.7729) <= 1e-3 && holds == 0;
    o.detail = fmt("abs unsteerable3 %.9f, abs local %.9f, abs nnce %.9f, 'never' violations %d/7500", steer, local,
                   nnce, holds);
    return o;
}

Outcome criterion4() {
    int compared = 0, mismatched = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double l = linspace(0, 1, 100, i), th = linspace(0, kPi / 2, 100, j);
            const CriterionVerdict v = is_ppt(gisin(l, th));
            if (std::abs(v.margin) <= 1e-7) continue;
            const bool closed = 1 - l * (1 + std::sin(2 * th)) >= 0 && 1 - l * (1 - std::sin(2 * th)) >= 0;
            ++compared;
            mismatched += closed != v.holds ? 1 : 0;
        }
    return {mismatched == 0, fmt("%d of %d grid points disagree", mismatched, compared)};
}

Outcome criterion5() {
    const DensityMatrix b = bell(BellState::PhiPlus);
    const double chsh = chsh_max(b).value;
    const double discord = discord_numeric(b, Side::A);
    const double cond = entropy_report(b).cond_A_given_B;
    const Spectrum s = b.spectrum();
    const bool any_abs = absolutely_separable_2xn(s, 2).holds || absolutely_local(s).holds ||
                         absolutely_unsteerable3(s).holds || absolutely_nonneg_cond_entropy(s).holds;
    Outcome o;
    o.pass = std::abs(chsh - 2 * std::sqrt(2.0)) <= 1e-9 && std::abs(discord - 1.0) <= 1e-3 &&
             std::abs(cond + 1.0) <= 1e-9 && !any_abs;
    o.detail = fmt("chsh %.12f, discord %.9f, S(A|B) %.12f, absolute criteria %s", chsh, discord, cond,
                   any_abs ? "some hold" : "all fail");
    return o;
}

Outcome criterion6() {
    const auto t0 = Clock::now();
    Rng rng(2024);
    int found = 0;
    std::size_t worst_evals = 0;
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix cc = random_classical_classical(random_simplex(4, rng), rng);
        const SearchResult r = search_counterexample(cc, AbsProperty::ZeroDiscord, 10000, 1000 + static_cast<std::uint64_t>(k));
        if (r.counterexample) {
            ++found;
            worst_evals = std::max(worst_evals, r.evaluated);
        }
    }
    const SearchResult mm = search_counterexample(DensityMatrix(), AbsProperty::ZeroDiscord, 100000, 7);
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = found >= 99 && !mm.counterexample && mm.evaluated == 100000 && dt < 600.0;
    o.detail = fmt("%d/100 discord-creating unitaries found (max %zu conjugations); I/4: %s after %zu, best margin %.3g; "
                   "%.1fs",
                   found, worst_evals, mm.counterexample ? "counterexample" : "none", mm.evaluated, mm.best_margin, dt);
    return o;
}

Outcome criterion7() {
    Rng rng(7);
    int compared = 0, mismatched = 0;
    auto cmp = [&](const DensityMatrix& rho, Side side) {
        const CriterionVerdict d = zero_discord_dakic(rho, side);
        const CriterionVerdict b = zero_discord_blocks(rho, side);
        if (std::abs(d.margin) <= 1e-7 && std::abs(b.margin) <= 1e-7 && d.holds == b.holds) {
            ++compared;
            return;
        }
        if (std::abs(d.margin) <= 1e-7 || std::abs(b.margin) <= 1e-7) return;
        ++compared;
        mismatched += d.holds != b.holds ? 1 : 0;
    };
    for (int k = 0; k < 1000; ++k) {
        const DensityMatrix rho = random_state(rng);
        cmp(rho, Side::A);
        cmp(rho, Side::B);
    }
    int holds = 0;
    for (int k = 0; k < 200; ++k) {
        const Side classical = k % 2 == 0 ? Side::A : Side::B;
        const DensityMatrix rho = random_classical_quantum(classical, rng);
        cmp(rho, Side::A);
        cmp(rho, Side::B);
        holds += zero_discord_blocks(rho, classical).holds && zero_discord_dakic(rho, classical).holds ? 1 : 0;
    }
    return {mismatched == 0 && holds == 200,
            fmt("%d of %d comparisons disagree; %d/200 constructed states zero on the classical side", mismatched,
                compared, holds)};
}

Outcome criterion8() {
    Rng rng(8);
    std::vector<DensityMatrix> corpus;
    corpus.reserve(2000);
    for (int k = 0; k < 2000; ++k) corpus.push_back(random_state(rng));
    const std::size_t ordinary = hierarchy_audit(corpus).size();
    std::size_t absolute = 0;
    for (int k = 0; k < 100000; ++k) absolute += audit_spectrum(Spectrum::from_values(random_simplex(4, rng))).size();
    return {ordinary == 0 && absolute == 0,
            fmt("%zu violations on 2000 states, %zu on 100000 spectra", ordinary, absolute)};
}

Outcome criterion9() {
    Rng rng(9);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const DensityMatrix rho = random_state(rng);
        worst = std::max(worst, (reconstruct(fano_bloch(rho)) - rho.matrix()).cwiseAbs().maxCoeff());
    }
    double werner_err = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double w = linspace(-1.0 / 3, 1.0, 101, i);
        const FanoBlochForm f = fano_bloch(werner(w));
        werner_err = std::max(werner_err, (f.t + w * RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-10 && werner_err <= 1e-10,
            fmt("max reconstruction error %.3g, max Werner tensor error %.3g", worst, werner_err)};
}

Outcome criterion10() {
    int quadrant[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const DensityMatrix g = gisin(linspace(0, 1, 50, i), linspace(0, kPi / 2, 50, j));
            const double local = chsh_max(g).verdict.margin;
            const double nnce = nonneg_cond_entropy(g).margin;
            if (std::abs(local) <= 1e-9 || std::abs(nnce) <= 1e-9) continue;
            ++quadrant[local < 0 ? 1 : 0][nnce < 0 ? 1 : 0];
        }
    const bool all = quadrant[0][0] > 0 && quadrant[0][1] > 0 && quadrant[1][0] > 0 && quadrant[1][1] > 0;
    return {all, fmt("local&NNCE %d, local&NCE %d, nonlocal&NNCE %d, nonlocal&NCE %d", quadrant[0][0], quadrant[0][1],
                     quadrant[1][0], quadrant[1][1])};
}

Outcome criterion11() {
    Rng rng(11);
    double worst = 0.0;
    int contextual = 0;
    for (int k = 0; k < 50; ++k) {
        const ComplexMatrix rho = random_density({3, 1}, 1 + static_cast<int>(rng.index(3)), rng).matrix();
        const std::vector<ComplexMatrix> ps = random_kcbs_family(rng);
        const ComplexMatrix u = haar_unitary(3, rng).matrix();
        std::vector<ComplexMatrix> rotated;
        for (const auto& p : ps) rotated.push_back(u * p * u.adjoint());
        const ValueVerdict a = kcbs_value_density(rho, ps);
        const ValueVerdict b = kcbs_value_density(u * rho * u.adjoint(), rotated);
        worst = std::max(worst, std::abs(a.value - b.value));
        if (a.verdict.holds != b.verdict.holds) worst = std::max(worst, 1.0);
        contextual += a.verdict.holds ? 0 : 1;
    }
    return {worst <= 1e-10, fmt("max value change %.3g over 50 triples (%d contextual)", worst, contextual)};
}

Outcome criterion12() {
    Rng rng(12);
    int mismatched = 0, holds = 0;
    for (int k = 0; k < 2000; ++k) {
        const Spectrum s = Spectrum::from_values(random_simplex(4, rng));
        const bool a = absolutely_ppt(s, {2, 2}).holds;
        const bool b = absolutely_separable_2xn(s, 2).holds;
        mismatched += a != b ? 1 : 0;
        holds += b ? 1 : 0;
    }
    return {mismatched == 0, fmt("%d of 2000 spectra disagree (%d absolutely separable)", mismatched, holds)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Werner thresholds", criterion1},
        {"Werner ordinary/absolute coincidence", criterion2},
        {"Gisin absolute thresholds", criterion3},
        {"Gisin separability region", criterion4},
        {"Bell-state panel", criterion5},
        {"absolute zero discord by search", criterion6},
        {"zero-discord cross-validation", criterion7},
        {"hierarchy audit", criterion8},
        {"Fano-Bloch round trip", criterion9},
        {"Gisin nonlocality/entropy quadrants", criterion10},
        {"KCBS invariance", criterion11},
        {"absolute PPT equivalence", criterion12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
