# Copyright 2026 The DMSP Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#     http://www.apache.org/licenses/LICENSE-2.0
# or in the "license" file accompanying this file. This file is distributed
# on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
# express or implied. See the License for the specific language governing
# permissions and limitations under the License.

"""
Matrix dump codec for regression fixtures and debug output.

Binary frame format:

| int rows | int cols | rows * cols big-endian float64 values, row-major |

CSV format: a ``rows,cols`` header line followed by one line per matrix row.
"""
import csv
import struct

import numpy as np

int_size = 4
double_size = 8


def encode_matrix(mat):
    """
    Encode a matrix into the binary frame format.

    :param mat: 2-d array
    :return: bytearray
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2:
        raise ValueError("only 2-d matrices can be encoded, got {} dims".format(mat.ndim))
    msg = bytearray()
    msg += struct.pack('!i', mat.shape[0])
    msg += struct.pack('!i', mat.shape[1])
    msg += mat.astype('>f8').tobytes(order='C')
    return msg


def decode_matrix(buf):
    """
    Decode one binary frame.

    :param buf: bytes-like object holding exactly one frame
    :return: numpy.ndarray
    """
    if len(buf) < 2 * int_size:
        raise ValueError("matrix frame truncated: {} bytes".format(len(buf)))
    rows, cols = struct.unpack('!ii', bytes(buf[:2 * int_size]))
    if rows < 0 or cols < 0:
        raise ValueError("negative matrix shape in frame header: ({}, {})".format(rows, cols))
    expected = 2 * int_size + rows * cols * double_size
    if len(buf) != expected:
        raise ValueError("matrix frame size mismatch, expected {} bytes, got {}".format(expected, len(buf)))
    values = np.frombuffer(bytes(buf[2 * int_size:]), dtype='>f8')
    return values.astype(float).reshape(rows, cols)


def write_matrix(path, mat):
    with open(path, "wb") as f:
        f.write(encode_matrix(mat))


def read_matrix(path):
    with open(path, "rb") as f:
        return decode_matrix(f.read())


def write_matrix_csv(path, mat):
    mat = np.asarray(mat, dtype=float)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([mat.shape[0], mat.shape[1]])
        for row in mat:
            writer.writerow([repr(float(v)) for v in row])


def read_matrix_csv(path):
    with open(path, "r", newline="") as f:
        reader = csv.reader(f)
        rows, cols = (int(v) for v in next(reader))
        values = [[float(v) for v in line] for line in reader if line]
    mat = np.array(values, dtype=float).reshape(rows, cols)
    return mat
