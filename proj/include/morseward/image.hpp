#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "morseward/chain.hpp"

namespace morseward {

/// Pixel grid. Binary images hold values in {0,1} with 1 = foreground;
/// gray images hold values in [0, maxval].
struct DigitalImage {
    int width = 0;
    int height = 0;
    int maxval = 1;
    std::vector<int> pixels;  // row-major

    int at(int r, int c) const { return pixels[static_cast<size_t>(r) *
                                               static_cast<size_t>(width) +
                                               static_cast<size_t>(c)]; }
    void set(int r, int c, int v) {
        pixels[static_cast<size_t>(r) * static_cast<size_t>(width) +
               static_cast<size_t>(c)] = v;
    }
    bool foreground(int r, int c) const;
    index_t foreground_count() const;
};

enum class ImageFormat { AsciiGrid, PgmPlain, PgmBinary };

/// Input decoding failure; `kind` makes the failure classes distinguishable.
class ImageFormatError : public std::runtime_error {
public:
    enum class Kind {
        EmptyInput,
        BadMagic,
        BadHeader,
        DimensionMismatch,
        IllegalCharacter,
        TruncatedData,
        ValueOutOfRange,
        UnsupportedMaxval,
    };
    ImageFormatError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// '#' = foreground, '.' = background for ascii grids; P2/P5 per the Netpbm
/// convention (maxval <= 255).
DigitalImage parse_image(const std::string& bytes, ImageFormat format);
/// Sniffs the format from the first bytes ("P2"/"P5" magic, else ascii grid).
DigitalImage parse_image_auto(const std::string& bytes);

std::string write_ascii_grid(const DigitalImage& img);
std::string write_pgm_plain(const DigitalImage& img);

enum class FiltrationMode { Frames, RowSweep, ColSweep, GrayLevel };

/// Pixel -> filtration index in [1, steps]; 0 marks background pixels that
/// never enter the complex.
struct FiltrationSpec {
    FiltrationMode mode = FiltrationMode::RowSweep;
    int steps = 1;
    int width = 0, height = 0;
    std::vector<int> assignment;  // row-major, 0 = background

    int index_of(int r, int c) const {
        return assignment[static_cast<size_t>(r) * static_cast<size_t>(width) +
                          static_cast<size_t>(c)];
    }
};

/// Contiguous bands of near-equal size along rows (or columns); every
/// foreground pixel in band k gets index k+1. Throws when steps exceeds the
/// axis length or steps < 1.
FiltrationSpec sweep_filtration(const DigitalImage& img, FiltrationMode axis,
                                int steps);

/// Nested frame list: every frame's foreground must be contained in the
/// next; a pixel's index is the first frame containing it. Returns the final
/// frame as the merged image. Violations name the first offending pixel.
std::pair<DigitalImage, FiltrationSpec> frames_filtration(
    const std::vector<DigitalImage>& frames);

/// Sublevel filtration on a gray image: index = position of the first
/// threshold the value passes (darker = earlier); values above the last
/// threshold stay background. Thresholds must be strictly increasing and
/// nonempty.
FiltrationSpec graylevel_filtration(const DigitalImage& img,
                                    const std::vector<int>& thresholds);

/// Two-triangles-per-pixel simplicial complex: each foreground pixel (r,c)
/// contributes its four corner vertices, the four sides plus the diagonal
/// (r,c)-(r+1,c+1), and two triangles. Shared faces are deduplicated, a
/// cell's filtration index is the minimum over the foreground pixels whose
/// closure contains it, and boundary signs follow the lexicographic vertex
/// order on (row, col).
ComplexPtr build_simplicial(const DigitalImage& img, const FiltrationSpec& filt);

/// One square 2-cell per foreground pixel with its four vertices and edges.
ComplexPtr build_cubical(const DigitalImage& img, const FiltrationSpec& filt);

}  // namespace morseward
