#pragma once

#include <hdf5.h>

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shmbench {

namespace detail {
/// The stock HDF5 build is not thread safe; all calls go through one lock.
inline std::mutex& hdf5_mutex() {
    static std::mutex m;
    return m;
}

/// Failures surface as exceptions; keep the library's own error stack quiet.
inline void silence_hdf5_diagnostics() {
    static const bool once = [] {
        H5Eset_auto2(H5E_DEFAULT, nullptr, nullptr);
        return true;
    }();
    (void)once;
}

struct HidCloser {
    herr_t (*close)(hid_t);
    hid_t id;
    ~HidCloser() {
        if (id >= 0) close(id);
    }
};
}  // namespace detail

/// Writes one acquisition: dataset "acc", 32-bit floats, contiguous layout.
/// Object timestamps are disabled so identical data gives identical files.
inline void write_acceleration_h5(const std::filesystem::path& path, std::span<const float> samples) {
    std::lock_guard<std::mutex> lock(detail::hdf5_mutex());
    detail::silence_hdf5_diagnostics();

    detail::HidCloser fapl{H5Pclose, H5Pcreate(H5P_FILE_ACCESS)};
    detail::HidCloser fcpl{H5Pclose, H5Pcreate(H5P_FILE_CREATE)};
    detail::HidCloser file{H5Fclose,
                           H5Fcreate(path.string().c_str(), H5F_ACC_TRUNC, fcpl.id, fapl.id)};
    if (file.id < 0) throw std::runtime_error("write_acceleration_h5: cannot create " + path.string());

    const hsize_t dims[1] = {samples.size()};
    detail::HidCloser space{H5Sclose, H5Screate_simple(1, dims, nullptr)};
    detail::HidCloser dcpl{H5Pclose, H5Pcreate(H5P_DATASET_CREATE)};
    H5Pset_obj_track_times(dcpl.id, false);
    H5Pset_layout(dcpl.id, H5D_CONTIGUOUS);

    detail::HidCloser dset{H5Dclose, H5Dcreate2(file.id, "acc", H5T_IEEE_F32LE, space.id, H5P_DEFAULT,
                                                dcpl.id, H5P_DEFAULT)};
    if (dset.id < 0) throw std::runtime_error("write_acceleration_h5: cannot create dataset 'acc'");
    if (H5Dwrite(dset.id, H5T_NATIVE_FLOAT, H5S_ALL, H5S_ALL, H5P_DEFAULT, samples.data()) < 0)
        throw std::runtime_error("write_acceleration_h5: write failed for " + path.string());
}

/// Reads the "acc" dataset back as float32 samples.
inline std::vector<float> read_acceleration_h5(const std::filesystem::path& path) {
    std::lock_guard<std::mutex> lock(detail::hdf5_mutex());
    detail::silence_hdf5_diagnostics();

    detail::HidCloser file{H5Fclose, H5Fopen(path.string().c_str(), H5F_ACC_RDONLY, H5P_DEFAULT)};
    if (file.id < 0) throw std::runtime_error("read_acceleration_h5: cannot open " + path.string());
    detail::HidCloser dset{H5Dclose, H5Dopen2(file.id, "acc", H5P_DEFAULT)};
    if (dset.id < 0)
        throw std::runtime_error("read_acceleration_h5: no dataset 'acc' in " + path.string());
    detail::HidCloser space{H5Sclose, H5Dget_space(dset.id)};
    if (H5Sget_simple_extent_ndims(space.id) != 1)
        throw std::runtime_error("read_acceleration_h5: dataset 'acc' is not one-dimensional");
    hsize_t n = 0;
    H5Sget_simple_extent_dims(space.id, &n, nullptr);

    std::vector<float> samples(n);
    if (H5Dread(dset.id, H5T_NATIVE_FLOAT, H5S_ALL, H5S_ALL, H5P_DEFAULT, samples.data()) < 0)
        throw std::runtime_error("read_acceleration_h5: read failed for " + path.string());
    return samples;
}

}  // namespace shmbench
