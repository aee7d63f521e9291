#include <moebius/cli/run.hpp>

#include <moebius/dynamics.hpp>
#include <moebius/spectra.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace moebius::cli {

namespace {

std::string stem(const std::string& experiment, Boundary b) { return experiment + "_" + to_string(b); }

double lead_center(const RunConfig& c) {
    if (c.lead_onsite) return *c.lead_onsite;
    return c.band == LeadBand::Valence ? -c.rung_coupling : c.rung_coupling;
}

std::vector<Table> spectrum_tables(const RunConfig& c, std::ostream& summary) {
    std::vector<Table> tables;
    for (Boundary b : c.boundaries()) {
        auto ev = eigenvalues(build_hamiltonian(ladder_from_config(c, b)));
        std::sort(ev.begin(), ev.end());
        Table t{stem("spectrum", b), {"index", "energy"}, {}};
        for (Eigen::Index i = 0; i < ev.size(); ++i) t.rows.push_back({static_cast<long long>(i), ev(i)});
        summary << to_string(b) << ": " << ev.size() << " levels in [" << format_cell(ev(0)) << ", "
                << format_cell(ev(ev.size() - 1)) << "]\n";
        tables.push_back(std::move(t));
    }
    return tables;
}

std::vector<Table> stark_tables(const RunConfig& c, std::ostream& summary) {
    const double v = c.rung_coupling;
    const auto model = build_continuum(c.cutoff, v, c.epsilon);
    const auto eig = eigensystem(model.matrix);
    Table t{"stark", {"n", "channel", "E0", "shift_formula", "E_exact", "shift_exact", "residual", "mixed_partner"}, {}};
    double worst = 0.0;
    for (const auto& row : stark_table(c.n_min, c.n_max, v, c.epsilon)) {
        const double exact = exact_level(model, eig, row.n, row.channel);
        const double shift = exact - row.energy;
        const auto partner = second_order_partner(row.n, row.channel);
        t.rows.push_back({static_cast<long long>(row.n), to_string(row.channel), row.energy, row.shift, exact, shift,
                          shift - row.shift, partner ? Cell(static_cast<long long>(*partner)) : Cell(std::string())});
        if (!partner) worst = std::max(worst, std::abs(shift - row.shift));
    }
    summary << "stark: " << t.rows.size() << " levels, max |residual| outside degenerate pairs "
            << format_cell(worst) << "\n";
    return {std::move(t)};
}

std::vector<Table> optical_tables(const RunConfig& c, std::ostream& summary) {
    const double v = c.rung_coupling;
    const double lo = c.omega_min.value_or(2.0 * v - 5.0);
    const double hi = c.omega_max.value_or(2.0 * v + 5.0);
    if (!(lo < hi)) throw ConfigError("omega_max", 0, "need omega_min < omega_max");
    const auto omega = uniform_grid(lo, hi, c.omega_points);

    std::vector<Table> tables;
    for (Boundary b : c.boundaries()) {
        const auto peaks = c.levels_source == LevelSource::Lattice
                               ? lattice_peaks(ladder_from_config(c, b), c.epsilon, c.absorption)
                               : continuum_peaks(c.n_min, c.n_max, v, c.epsilon, b, c.absorption);
        const auto spec = render_spectrum(peaks, omega, c.eta);

        Table curve{stem("optical", b), {"omega", "intensity"}, {}};
        for (Eigen::Index i = 0; i < omega.size(); ++i) curve.rows.push_back({omega(i), spec.intensity(i)});
        Table centers{stem("peaks", b), {"center", "weight"}, {}};
        int in_window = 0;
        for (const auto& p : spec.peaks) {
            centers.rows.push_back({p.center, p.weight});
            if (p.center >= lo && p.center <= hi) ++in_window;
        }
        summary << to_string(b) << ": " << spec.peaks.size() << " peak centers, " << in_window << " in ["
                << format_cell(lo) << ", " << format_cell(hi) << "]\n";
        tables.push_back(std::move(curve));
        tables.push_back(std::move(centers));
    }
    return tables;
}

std::vector<Table> transmission_tables(const RunConfig& c, std::ostream& summary) {
    const auto leads = leads_from_config(c);
    const double half = 2.0 * c.hopping - 0.1;
    const double center = lead_center(c);
    const double lo = c.energy_min.value_or(center - half);
    const double hi = c.energy_max.value_or(center + half);
    if (!(lo < hi)) throw ConfigError("energy_max", 0, "need energy_min < energy_max");
    const auto grid = uniform_grid(lo, hi, c.energy_points);

    std::vector<Table> tables;
    for (Boundary b : c.boundaries()) {
        const auto curve = transmission(ladder_from_config(c, b), leads, grid);
        Table t{stem("transmission", b), {"E", "T", "ReSigma_L", "ImSigma_L", "ReSigma_R", "ImSigma_R"}, {}};
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const auto& sl = curve.sigma_left[static_cast<std::size_t>(i)];
            const auto& sr = curve.sigma_right[static_cast<std::size_t>(i)];
            t.rows.push_back({grid(i), curve.transmission(i), sl.real(), sl.imag(), sr.real(), sr.imag()});
        }
        summary << to_string(b) << ": max T " << format_cell(curve.transmission.maxCoeff()) << ", "
                << count_peaks(curve.transmission) << " peaks above 1e-6\n";
        tables.push_back(std::move(t));
    }
    return tables;
}

std::vector<Table> decoherence_tables(const RunConfig& c, std::ostream& summary) {
    const double t_max = c.time_max.value_or(3.0 * c.sites / (2.0 * c.hopping));
    const auto grid = uniform_grid(0.0, t_max, c.time_points);

    std::vector<Table> tables;
    for (Boundary b : c.boundaries()) {
        const auto spec = ladder_from_config(c, b);
        const auto series = decoherence_factor(spec, grid);
        const auto entropy = entanglement_entropy(series);
        Table t{stem("decoherence", b), {"t", "re_D", "im_D", "abs_D", "abs_D_bessel", "envelope", "entropy"}, {}};
        double gap = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const auto& d = series.direct[static_cast<std::size_t>(i)];
            const double bessel = std::abs(series.bessel[static_cast<std::size_t>(i)]);
            gap = std::max(gap, std::abs(std::abs(d) - bessel));
            t.rows.push_back({grid(i), d.real(), d.imag(), std::abs(d), bessel, series.envelope(i), entropy.entropy(i)});
        }
        summary << to_string(b) << ": |D(0)| " << format_cell(std::abs(series.direct.front()))
                << ", max ||D| - |D_bessel|| " << format_cell(gap);
        if (b == Boundary::Moebius) summary << ", xi' " << format_cell(series.xi_prime);
        summary << "\n";
        tables.push_back(std::move(t));
    }
    return tables;
}

} // namespace

LadderSpec<double> ladder_from_config(const RunConfig& c, Boundary boundary) {
    auto spec = c.field != 0.0
                    ? field_ladder<double>(c.sites, c.rung_coupling, c.hopping, c.field, boundary, c.radius, c.half_width)
                    : homogeneous_ladder<double>(c.sites, c.rung_coupling, c.hopping, boundary);
    spec.radius = c.radius;
    spec.half_width = c.half_width;
    return spec;
}

LeadSpec<double> leads_from_config(const RunConfig& c) {
    LeadSpec<double> leads;
    leads.hopping = c.lead_hopping;
    leads.tunneling = c.tunneling;
    leads.onsite = lead_center(c);
    leads.attach_left = c.attach_left;
    leads.attach_right = c.attach_right;
    leads.wide_band = c.wide_band;
    return leads;
}

std::vector<Table> compute_tables(const RunConfig& config, std::ostream& summary) {
    validate(config);
    switch (config.experiment) {
    case Experiment::Spectrum: return spectrum_tables(config, summary);
    case Experiment::Stark: return stark_tables(config, summary);
    case Experiment::Optical: return optical_tables(config, summary);
    case Experiment::Transmission: return transmission_tables(config, summary);
    case Experiment::Decoherence: return decoherence_tables(config, summary);
    }
    return {};
}

std::vector<std::filesystem::path> run(const RunConfig& config, std::ostream& summary) {
    const auto tables = compute_tables(config, summary);
    std::vector<std::filesystem::path> files;
    for (const auto& t : tables) {
        files.push_back(write_table(config, t));
        summary << "wrote " << files.back().string() << "\n";
    }
    return files;
}

} // namespace moebius::cli
