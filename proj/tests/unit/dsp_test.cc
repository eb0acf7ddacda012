// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dereverb/common/error.h"
#include "dereverb/dsp/audio.h"
#include "dereverb/dsp/convolve.h"
#include "dereverb/dsp/preprocess.h"
#include "dereverb/dsp/resample.h"
#include "dereverb/dsp/stft.h"

namespace dereverb::dsp {
namespace {

namespace fs = std::filesystem;

fs::path TempPath(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "dereverb_dsp_test";
  fs::create_directories(dir);
  return dir / name;
}

void PutU16(std::string* s, uint16_t v) {
  s->push_back(static_cast<char>(v & 0xff));
  s->push_back(static_cast<char>(v >> 8));
}
void PutU32(std::string* s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s->push_back(static_cast<char>(v >> (8 * i)));
}

// Hand-assembled canonical 44-byte-header WAV, independent of WriteWav.
void WriteRawWav(const fs::path& path, uint16_t format, uint16_t channels,
                 uint32_t rate, uint16_t bits, const std::string& payload) {
  std::string s = "RIFF";
  PutU32(&s, 36 + static_cast<uint32_t>(payload.size()));
  s += "WAVEfmt ";
  PutU32(&s, 16);
  PutU16(&s, format);
  PutU16(&s, channels);
  PutU32(&s, rate);
  PutU32(&s, rate * channels * bits / 8);
  PutU16(&s, channels * bits / 8);
  PutU16(&s, bits);
  s += "data";
  PutU32(&s, static_cast<uint32_t>(payload.size()));
  s += payload;
  std::ofstream(path, std::ios::binary).write(s.data(), s.size());
}

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<double> RandomSignal(size_t n, uint64_t seed, double amp = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-amp, amp);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidArgument;
}

// ---------------------------------------------------------------- WAV

TEST(WavTest, Pcm16IsScaledByInverse32768) {
  std::string payload;
  for (int16_t v : {0, 16384, -16384}) PutU16(&payload, static_cast<uint16_t>(v));
  const fs::path path = TempPath("pcm16.wav");
  WriteRawWav(path, 1, 1, 16000, 16, payload);
  AudioClip clip = ReadWav(path);
  EXPECT_EQ(clip.sample_rate, 16000);
  ASSERT_EQ(clip.samples.size(), 3u);
  EXPECT_EQ(clip.samples[0], 0.0);
  EXPECT_EQ(clip.samples[1], 0.5);
  EXPECT_EQ(clip.samples[2], -0.5);
}

TEST(WavTest, StereoIsAveragedToMono) {
  std::string payload;
  for (float v : {1.0f, 0.0f}) {
    uint32_t w;
    std::memcpy(&w, &v, 4);
    PutU32(&payload, w);
  }
  const fs::path path = TempPath("stereo.wav");
  WriteRawWav(path, 3, 2, 16000, 32, payload);
  AudioClip clip = ReadWav(path);
  ASSERT_EQ(clip.samples.size(), 1u);
  EXPECT_EQ(clip.samples[0], 0.5);
}

TEST(WavTest, Float32RoundTripIsBitExact) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    AudioClip clip;
    clip.sample_rate = 22050;
    // Values representable in float32 so equality is exact.
    for (double v : RandomSignal(1000 + seed * 37, seed)) {
      clip.samples.push_back(static_cast<float>(v));
    }
    const fs::path path = TempPath("roundtrip.wav");
    WriteWav(path, clip, WavFormat::kFloat32);
    EXPECT_EQ(ReadWav(path), clip);
  }
}

TEST(WavTest, Pcm16WriterClampsAndRounds) {
  AudioClip clip{{0.0, 1.5, -2.0, 0.5}, 16000};
  const fs::path path = TempPath("clamp.wav");
  WriteWav(path, clip, WavFormat::kPcm16);
  const std::string bytes = ReadBytes(path);
  ASSERT_EQ(bytes.size(), 44u + 8u);
  auto word = [&](size_t i) {
    int16_t v;
    std::memcpy(&v, bytes.data() + 44 + 2 * i, 2);
    return v;
  };
  EXPECT_EQ(word(0), 0);
  EXPECT_EQ(word(1), 32767);
  EXPECT_EQ(word(2), -32768);
  EXPECT_EQ(word(3), 16384);
}

TEST(WavTest, RejectsUnsupportedAndCorruptFiles) {
  const fs::path p24 = TempPath("pcm24.wav");
  WriteRawWav(p24, 1, 1, 16000, 24, std::string(6, '\0'));
  EXPECT_EQ(CodeOf([&] { ReadWav(p24); }), ErrorCode::kUnsupportedFormat);

  const fs::path adpcm = TempPath("adpcm.wav");
  WriteRawWav(adpcm, 2, 1, 16000, 4, std::string(8, '\0'));
  EXPECT_EQ(CodeOf([&] { ReadWav(adpcm); }), ErrorCode::kUnsupportedFormat);

  const fs::path junk = TempPath("junk.wav");
  std::ofstream(junk) << "definitely not a wave file";
  EXPECT_EQ(CodeOf([&] { ReadWav(junk); }), ErrorCode::kCorruptHeader);

  const fs::path empty = TempPath("empty.wav");
  WriteRawWav(empty, 1, 1, 16000, 16, "");
  EXPECT_EQ(CodeOf([&] { ReadWav(empty); }), ErrorCode::kEmptyAudio);

  EXPECT_EQ(CodeOf([&] { ReadWav(TempPath("missing.wav")); }),
            ErrorCode::kIoFailure);
}

// ----------------------------------------------------------- Resample

// Magnitude of the naive DFT at bin k.
double DftMagnitude(const std::vector<double>& x, size_t k) {
  std::complex<double> acc;
  const double w = -2.0 * std::numbers::pi * k / x.size();
  for (size_t n = 0; n < x.size(); ++n) acc += x[n] * std::polar(1.0, w * n);
  return std::abs(acc);
}

TEST(ResampleTest, SameRateIsIdentity) {
  AudioClip clip{RandomSignal(777, 1), 16000};
  EXPECT_EQ(Resample(clip, 16000), clip);
}

TEST(ResampleTest, OutputLengthIsRoundedRatio) {
  AudioClip clip{RandomSignal(44101, 2, 0.1), 44100};
  AudioClip out = Resample(clip, 16000);
  EXPECT_EQ(out.sample_rate, 16000);
  EXPECT_EQ(out.samples.size(), 16000u);  // round(44101 * 160 / 441)
  AudioClip up = Resample(AudioClip{RandomSignal(101, 3), 8000}, 16000);
  EXPECT_EQ(up.samples.size(), 202u);
}

TEST(ResampleTest, SinePeakSurvivesDownsampling) {
  AudioClip clip;
  clip.sample_rate = 48000;
  for (int n = 0; n < 3 * 4096; ++n) {
    clip.samples.push_back(std::sin(2.0 * std::numbers::pi * 1000.0 * n / 48000));
  }
  AudioClip out = Resample(clip, 16000);
  ASSERT_EQ(out.samples.size(), 4096u);
  std::vector<double> hann(out.samples.size());
  for (size_t n = 0; n < hann.size(); ++n) {
    hann[n] = out.samples[n] *
              (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / hann.size()));
  }
  size_t best = 0;
  double best_mag = -1.0;
  for (size_t k = 0; k <= hann.size() / 2; ++k) {
    const double m = DftMagnitude(hann, k);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  const double expected = 1000.0 * hann.size() / 16000.0;  // 256
  EXPECT_NEAR(static_cast<double>(best), expected, 1.0);
}

TEST(ResampleTest, DcGainIsUnity) {
  for (int source : {48000, 44100, 8000, 22050}) {
    AudioClip clip{std::vector<double>(source, 1.0), source};
    AudioClip out = Resample(clip, 16000);
    const size_t margin = 200;
    double worst = 0.0;
    for (size_t i = margin; i + margin < out.samples.size(); ++i) {
      worst = std::max(worst, std::abs(out.samples[i] - 1.0));
    }
    EXPECT_LT(worst, 1e-3) << "source rate " << source;
  }
}

// --------------------------------------------------------- Convolution

TEST(ConvolveTest, HandExpansionAndIdentity) {
  const std::vector<double> a = {1, 2}, b = {3, 4};
  EXPECT_EQ(ConvolveDirect(a, b), (std::vector<double>{3, 10, 8}));
  const std::vector<double> x = RandomSignal(50, 4);
  const std::vector<double> delta = {1.0};
  EXPECT_EQ(ConvolveDirect(x, delta), x);
  std::vector<double> y = ConvolveFft(x, delta);
  ASSERT_EQ(y.size(), x.size());
  for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 1e-12);
}

TEST(ConvolveTest, ShiftedDeltaDelays) {
  const std::vector<double> x = RandomSignal(300, 5);
  for (size_t d : {1u, 17u, 255u}) {
    std::vector<double> h(d + 1, 0.0);
    h[d] = 1.0;
    for (const auto& y : {ConvolveDirect(x, h), ConvolveFft(x, h)}) {
      ASSERT_EQ(y.size(), x.size() + d);
      for (size_t i = 0; i < d; ++i) EXPECT_NEAR(y[i], 0.0, 1e-12);
      for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i + d], x[i], 1e-12);
    }
  }
}

double MaxRelError(const std::vector<double>& a, const std::vector<double>& b) {
  double peak = 0.0, err = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    peak = std::max(peak, std::abs(b[i]));
    err = std::max(err, std::abs(a[i] - b[i]));
  }
  return err / peak;
}

TEST(ConvolveTest, FftMatchesDirectOnRandomPairs) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<size_t> len(1, 700);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = RandomSignal(len(rng), 100 + trial);
    const auto h = RandomSignal(len(rng), 200 + trial);
    const auto direct = ConvolveDirect(x, h);
    const auto fast = ConvolveFft(x, h);
    ASSERT_EQ(direct.size(), fast.size());
    EXPECT_LT(MaxRelError(fast, direct), 1e-9) << "trial " << trial;
  }
}

TEST(ConvolveTest, FftMatchesDirectAtLongLengths) {
  // Output length 2^17 - 1.
  const auto x = RandomSignal(100000, 7);
  const auto h = RandomSignal(31071, 8);
  EXPECT_LT(MaxRelError(ConvolveFft(x, h), ConvolveDirect(x, h)), 1e-9);
}

TEST(ConvolveTest, EmptyOperandIsRejected) {
  const std::vector<double> empty, one = {1.0};
  EXPECT_THROW(ConvolveDirect(empty, one), Error);
  EXPECT_THROW(ConvolveFft(one, empty), Error);
}

// ---------------------------------------------------------------- STFT

TEST(StftTest, FrameCountsForPaperDurations) {
  AudioClip five{std::vector<double>(80000, 0.0), 16000};
  ComplexSpectrogram s5 = Stft(five);
  EXPECT_EQ(s5.frames(), 313u);
  EXPECT_EQ(s5.bins(), 257u);
  AudioClip two{RandomSignal(32000, 9), 16000};
  ComplexSpectrogram s2 = Stft(two);
  EXPECT_EQ(s2.frames(), 126u);
  EXPECT_EQ(s2.bins(), 257u);
}

TEST(StftTest, FrameCountPropertyOverLengths) {
  for (size_t len = 1; len < 2000; len += 37) {
    AudioClip clip{RandomSignal(len, len), 16000};
    EXPECT_EQ(Stft(clip).frames(), 1 + len / 256) << len;
    EXPECT_EQ(Stft(clip, 64, 16).frames(), 1 + len / 16) << len;
  }
}

TEST(StftTest, ZeroSignalGivesZeroSpectrogram) {
  AudioClip clip{std::vector<double>(4000, 0.0), 16000};
  ComplexSpectrogram s = Stft(clip);
  for (double v : s.re.data()) EXPECT_EQ(v, 0.0);
  for (double v : s.im.data()) EXPECT_EQ(v, 0.0);
  AudioClip back = Istft(s);
  for (double v : back.samples) EXPECT_EQ(v, 0.0);
}

TEST(StftTest, InverseRoundTripOnRandomSignals) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    // 1 s is not a whole number of hops, so the length is passed through;
    // the second length is 63 hops and uses the default output length.
    const size_t len = seed % 2 == 0 ? 16000 : 16128;
    AudioClip clip{RandomSignal(len, 50 + seed), 16000};
    AudioClip back = seed % 2 == 0 ? Istft(Stft(clip), len) : Istft(Stft(clip));
    ASSERT_EQ(back.samples.size(), clip.samples.size());
    double err = 0.0;
    for (size_t i = 0; i < clip.size(); ++i) {
      err = std::max(err, std::abs(back.samples[i] - clip.samples[i]));
    }
    EXPECT_LT(err, 1e-6);
  }
}

TEST(StftTest, InverseRoundTripPreservesSineRms) {
  AudioClip clip;
  for (int n = 0; n < 16000; ++n) {
    clip.samples.push_back(0.7 * std::sin(2.0 * std::numbers::pi * 440.0 * n / 16000));
  }
  AudioClip back = Istft(Stft(clip), clip.size());
  auto rms = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / x.size());
  };
  EXPECT_NEAR(rms(back.samples) / rms(clip.samples), 1.0, 1e-3);
}

TEST(StftTest, NonColaParametersAreRejected) {
  AudioClip clip{RandomSignal(1000, 10), 16000};
  ComplexSpectrogram s = Stft(clip, 512, 300);
  EXPECT_EQ(CodeOf([&] { Istft(s); }), ErrorCode::kNonColaParams);
  ComplexSpectrogram s2 = Stft(clip, 512, 512);
  EXPECT_EQ(CodeOf([&] { Istft(s2); }), ErrorCode::kNonColaParams);
}

TEST(MagnitudeTest, PythagoreanTriple) {
  ComplexSpectrogram s;
  s.re = Array2D(1, 1, 3.0);
  s.im = Array2D(1, 1, 4.0);
  EXPECT_EQ(Magnitude(s).mag(0, 0), 5.0);
}

TEST(MagnitudeTest, LogFloorAndInverse) {
  Array2D m(1, 3);
  m(0, 0) = 0.0;
  m(0, 1) = 0.25;
  m(0, 2) = 1e-5;
  Array2D l = LogMagnitude(m);
  EXPECT_NEAR(l(0, 0), -11.512925464970229, 1e-12);
  EXPECT_DOUBLE_EQ(std::exp(l(0, 1)), 0.25);
  EXPECT_DOUBLE_EQ(std::exp(l(0, 2)), 1e-5);
}

TEST(NormalizeTest, DividesByGlobalMax) {
  Array2D m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 4.0;
  m(1, 0) = 2.0;
  MagSpectrogram n = NormalizeSpectrogram(m);
  EXPECT_EQ(n.scale, 4.0);
  EXPECT_EQ(n.mag(0, 1), 1.0);
  EXPECT_EQ(n.mag(1, 0), 0.5);
}

TEST(NormalizeTest, AllZeroIsUnchanged) {
  Array2D m(3, 3);
  MagSpectrogram n = NormalizeSpectrogram(m);
  EXPECT_EQ(n.scale, 0.0);
  EXPECT_EQ(n.mag, m);
}

TEST(NormalizeTest, MaxIsExactlyOneAndDenormalizeInverts) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 37.0);
  for (int trial = 0; trial < 20; ++trial) {
    Array2D m(7, 5);
    for (double& v : m.data()) v = d(rng);
    MagSpectrogram n = NormalizeSpectrogram(m);
    double peak = 0.0;
    for (double v : n.mag.data()) peak = std::max(peak, v);
    EXPECT_EQ(peak, 1.0);
    Array2D back = Denormalize(n);
    // (v / s) * s is within one rounding of v.
    for (size_t i = 0; i < m.size(); ++i) {
      EXPECT_LE(std::abs(back.data()[i] - m.data()[i]),
                std::abs(m.data()[i]) * 2.3e-16);
    }
  }
}

// ------------------------------------------------------- Preprocessing

TEST(DirectPathTest, DeltaPositions) {
  AudioClip rir{std::vector<double>(1000, 0.0), 16000};
  rir.samples[0] = 1.0;
  EXPECT_EQ(DetectDirectPathDelay(rir), 0u);
  rir.samples[0] = 0.0;
  rir.samples[480] = -0.3;
  EXPECT_EQ(DetectDirectPathDelay(rir), 480u);
}

AudioClip SyntheticRir(size_t onset, size_t tail, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  AudioClip rir{std::vector<double>(onset, 0.0), 16000};
  for (size_t i = 0; i < tail; ++i) {
    rir.samples.push_back(noise(rng) * std::exp(-static_cast<double>(i) / 800.0));
  }
  rir.samples[onset] = 3.0;  // direct path dominates the first noise draws
  return rir;
}

TEST(DirectPathTest, SyntheticOnsetWithinOneSample) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const size_t found = DetectDirectPathDelay(SyntheticRir(480, 8000, seed));
    EXPECT_NEAR(static_cast<double>(found), 480.0, 1.0);
  }
}

TEST(DirectPathTest, ShiftEquivariance) {
  const AudioClip rir = SyntheticRir(37, 4000, 12);
  const size_t base = DetectDirectPathDelay(rir);
  for (size_t d : {1u, 10u, 999u}) {
    EXPECT_EQ(DetectDirectPathDelay(Delay(rir, d)), base + d);
  }
}

TEST(DirectPathTest, AllZeroIsAnError) {
  AudioClip rir{std::vector<double>(10, 0.0), 16000};
  EXPECT_EQ(CodeOf([&] { DetectDirectPathDelay(rir); }), ErrorCode::kAllZeroRir);
}

TEST(TrimTest, Offsets) {
  AudioClip a{{0, 0, 0, 0.5, 0.1, -0.2}, 16000};
  auto [trimmed, offset] = TrimLeadingSilence(a);
  EXPECT_EQ(offset, 3u);
  EXPECT_EQ(trimmed.samples, (std::vector<double>{0.5, 0.1, -0.2}));

  AudioClip loud{{0.9, 0.0, 0.1}, 16000};
  EXPECT_EQ(TrimLeadingSilence(loud).second, 0u);

  AudioClip prefixed{std::vector<double>(1000, 0.0), 16000};
  const auto speech = RandomSignal(5000, 13, 0.5);
  prefixed.samples.insert(prefixed.samples.end(), speech.begin(), speech.end());
  prefixed.samples[1000] = 0.4;
  EXPECT_EQ(TrimLeadingSilence(prefixed).second, 1000u);
}

TEST(TrimTest, AllSilentTrimsToEmpty) {
  AudioClip silent{std::vector<double>(25, 0.0), 16000};
  auto [trimmed, offset] = TrimLeadingSilence(silent);
  EXPECT_TRUE(trimmed.samples.empty());
  EXPECT_EQ(offset, 25u);
}

TEST(FixLengthTest, TruncateAndPad) {
  const auto x = RandomSignal(90000, 14);
  AudioClip clip{x, 16000};
  EXPECT_EQ(FixLength(AudioClip{std::vector<double>(x.begin(), x.begin() + 80000), 16000},
                      80000)
                .samples.size(),
            80000u);
  AudioClip cut = FixLength(clip, 80000);
  EXPECT_TRUE(std::equal(cut.samples.begin(), cut.samples.end(), x.begin()));
  AudioClip short_clip{std::vector<double>(x.begin(), x.begin() + 70000), 16000};
  AudioClip padded = FixLength(short_clip, 80000);
  ASSERT_EQ(padded.samples.size(), 80000u);
  EXPECT_TRUE(std::equal(short_clip.samples.begin(), short_clip.samples.end(),
                         padded.samples.begin()));
  for (size_t i = 70000; i < 80000; ++i) EXPECT_EQ(padded.samples[i], 0.0);
}

}  // namespace
}  // namespace dereverb::dsp
