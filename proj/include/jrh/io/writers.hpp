#pragma once
#include "jrh/errors.hpp"
#include "jrh/numeric/complex.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace jrh {

/// Shortest round-trip decimal form, independent of the locale.
inline std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Every significant digit of the working precision.
inline std::string fmt(const BigReal& x) {
    int digits = static_cast<int>(x.precision());
    return x.str(digits, std::ios_base::scientific);
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + p.string());
    f << text;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) { row(header); }
    void row(const std::vector<std::string>& cells) {
        if (cells.size() != cols_) throw InvalidInput("csv row has the wrong number of cells");
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape(cells[i]);
        }
        out_ << '\n';
    }
    std::string str() const { return out_.str(); }
    void save(const std::filesystem::path& p) const { write_text(p, out_.str()); }

private:
    static std::string escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string o = "\"";
        for (char c : s) {
            if (c == '"') o += '"';
            o += c;
        }
        return o + "\"";
    }
    size_t cols_;
    std::ostringstream out_;
};

/// Fixed-width text table.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
    std::string str() const {
        std::vector<size_t> w;
        for (auto& r : rows_)
            for (size_t i = 0; i < r.size(); ++i) {
                if (w.size() <= i) w.push_back(0);
                w[i] = std::max(w[i], r[i].size());
            }
        std::ostringstream o;
        for (size_t k = 0; k < rows_.size(); ++k) {
            for (size_t i = 0; i < rows_[k].size(); ++i) {
                if (i) o << "  ";
                o << rows_[k][i] << std::string(w[i] - rows_[k][i].size(), ' ');
            }
            o << '\n';
            if (k == 0) {
                size_t total = 0;
                for (size_t i = 0; i < w.size(); ++i) total += w[i] + (i ? 2 : 0);
                o << std::string(total, '-') << '\n';
            }
        }
        return o.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

/// Minimal SVG overlay of polylines and dots, viewport from the data extent.
class SvgPlot {
public:
    void polyline(const std::vector<std::complex<double>>& pts, const std::string& color, double width = 1.5,
                  bool closed = false) {
        lines_.push_back({pts, color, width, closed});
    }
    void dots(const std::vector<std::complex<double>>& pts, const std::string& color, double radius = 2.5) {
        dots_.push_back({pts, color, radius});
    }
    void clip(double xmin, double xmax, double ymin, double ymax) {
        clip_ = {xmin, xmax, ymin, ymax};
        has_clip_ = true;
    }

    std::string str(int size = 800) const {
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        auto grow = [&](std::complex<double> z) {
            if (has_clip_ && (z.real() < clip_[0] || z.real() > clip_[1] || z.imag() < clip_[2] || z.imag() > clip_[3]))
                return;
            x0 = std::min(x0, z.real());
            x1 = std::max(x1, z.real());
            y0 = std::min(y0, z.imag());
            y1 = std::max(y1, z.imag());
        };
        for (auto& l : lines_)
            for (auto z : l.pts) grow(z);
        for (auto& d : dots_)
            for (auto z : d.pts) grow(z);
        if (x0 > x1) x0 = -1, x1 = 1, y0 = -1, y1 = 1;
        double span = std::max(x1 - x0, y1 - y0) * 1.05 + 1e-12;
        double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
        double s = size / span;
        auto X = [&](std::complex<double> z) { return fmt((z.real() - cx) * s + size / 2.0); };
        auto Y = [&](std::complex<double> z) { return fmt(size / 2.0 - (z.imag() - cy) * s); };
        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
          << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
        o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        auto inside = [&](std::complex<double> z) { return std::abs(z.real() - cx) < span && std::abs(z.imag() - cy) < span; };
        for (auto& l : lines_) {
            o << "<" << (l.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << l.color
              << "\" stroke-width=\"" << fmt(l.width) << "\" points=\"";
            bool first = true;
            for (auto z : l.pts) {
                if (!inside(z)) continue;
                if (!first) o << ' ';
                o << X(z) << ',' << Y(z);
                first = false;
            }
            o << "\"/>\n";
        }
        for (auto& d : dots_)
            for (auto z : d.pts) {
                if (!inside(z)) continue;
                o << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"" << fmt(d.radius) << "\" fill=\""
                  << d.color << "\"/>\n";
            }
        o << "</svg>\n";
        return o.str();
    }
    void save(const std::filesystem::path& p) const { write_text(p, str()); }

private:
    struct Line {
        std::vector<std::complex<double>> pts;
        std::string color;
        double width;
        bool closed;
    };
    struct Dots {
        std::vector<std::complex<double>> pts;
        std::string color;
        double radius;
    };
    std::vector<Line> lines_;
    std::vector<Dots> dots_;
    std::array<double, 4> clip_{};
    bool has_clip_ = false;
};

/// Exclusive ownership of an output directory for the lifetime of the object.
class DirectoryLock {
public:
    explicit DirectoryLock(const std::filesystem::path& dir) : path_(dir / ".jrh.lock") {
        std::filesystem::create_directories(dir);
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) throw LockHeld("output directory " + dir.string() + " is locked by another run");
        std::string pid = std::to_string(::getpid()) + "\n";
        if (::write(fd_, pid.data(), pid.size()) < 0) {
            // the lock itself is the file; its content is informational
        }
    }
    ~DirectoryLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    std::filesystem::path path_;
    int fd_ = -1;
};

}  // namespace jrh
