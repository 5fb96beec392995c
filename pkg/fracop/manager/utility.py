#! /usr/bin/env python3
# coding: utf8

"""
File : utility.py
Author : lgbarrere
Brief : Define all constants and "tool" functions to use in other scripts
"""
from os import path
from pathlib import Path
import csv
import json
import logging as lg
import os

from .errors import ProblemFormatError


class Constants:
    """
    Brief : Numeric defaults and project paths shared by every module
    """
    # Path to root folder
    __ROOT_PATH = path.dirname(path.dirname(path.dirname(path.abspath(__file__))))
    __DATA_FOLDER = 'data' # Fixture problem documents
    __DATA_PATH = path.join(__ROOT_PATH, __DATA_FOLDER)
    __RESULT_FOLDER = 'result' # Default output folder
    __RESULT_PATH = path.join(__ROOT_PATH, __RESULT_FOLDER)

    # Series algebra
    __EXPONENT_TOL = 1e-12 # Exponents closer than this are merged
    __COEFF_TOL = 1e-13 # Coefficients below this count as numerical noise
    __DEFAULT_ORDER = 64 # Convolution powers summed in a resolvent
    __IMAG_TOL = 1e-9 # Allowed imaginary residue of real-valued results

    # Kernels
    __VALIDATION_ORDER = 32 # Terms kept in catalog kernels
    __RESIDUAL_TOL = 1e-10 # Sonin and triple residual tolerance

    # Mittag-Leffler summation
    __ML_TOL_ABS = 1e-15
    __ML_TOL_REL = 1e-15
    __ML_SMALL_RUN = 16 # Consecutive small terms to stop
    __ML_TERM_CAP = 10000
    __ML_Z_GUARD = 50.0

    # Partial fractions
    __ROOT_TOL = 1e-7 # Pole clustering radius
    __PFD_ERROR_TOL = 1e-6 # Recombination residual raising IllConditioned
    __PFD_CHECK_TOL = 1e-9 # Recombination invariant
    __HORIZON_TOL = 1e-6 # Relative weight allowed for the last exponent band

    # Grids
    __T_END = 1.0
    __N_STEPS = 1024
    __MIN_STEPS = 8
    __INTERIOR_FRACTION = 0.1 # Errors are measured on t >= fraction * t_end
    __REGULARITY_EXPONENT = 2.0 # Leading exponent left to the time stepping
    __GAUSS_ORDER = 20


    def __init__(self):
        pass


    ## Getters
    def get_data_path(self):
        """
        Brief : Get the path to the data folder
        Return : Path to the data folder
        """
        return self.__DATA_PATH


    def get_result_path(self):
        """
        Brief : Get the path to the result folder
        Return : Path to the result folder
        """
        return self.__RESULT_PATH


    def get_exponent_tol(self):
        """
        Brief : Get the absolute tolerance under which two exponents are equal
        Return : The tolerance
        """
        return self.__EXPONENT_TOL


    def get_coeff_tol(self):
        """
        Brief : Get the magnitude under which a coefficient is numerical noise
        Return : The tolerance
        """
        return self.__COEFF_TOL


    def get_default_order(self):
        """
        Brief : Get the default number of convolution powers in a series
        Return : The order
        """
        return self.__DEFAULT_ORDER


    def get_imag_tol(self):
        """
        Brief : Get the allowed imaginary residue of real-valued results
        Return : The tolerance
        """
        return self.__IMAG_TOL


    def get_validation_order(self):
        """
        Brief : Get the number of terms kept in catalog kernels
        Return : The order
        """
        return self.__VALIDATION_ORDER


    def get_residual_tol(self):
        """
        Brief : Get the tolerance of the Sonin and triple residuals
        Return : The tolerance
        """
        return self.__RESIDUAL_TOL


    def get_ml_tolerances(self):
        """
        Brief : Get the stopping rule of the Mittag-Leffler summation
        Return : (tol_abs, tol_rel, small_run, term_cap, z_guard)
        """
        return (self.__ML_TOL_ABS, self.__ML_TOL_REL, self.__ML_SMALL_RUN,
                self.__ML_TERM_CAP, self.__ML_Z_GUARD)


    def get_root_tol(self):
        """
        Brief : Get the radius used to cluster poles into multiple roots
        Return : The radius
        """
        return self.__ROOT_TOL


    def get_pfd_error_tol(self):
        """
        Brief : Get the recombination residual above which a decomposition fails
        Return : The tolerance
        """
        return self.__PFD_ERROR_TOL


    def get_pfd_check_tol(self):
        """
        Brief : Get the recombination residual expected from a decomposition
        Return : The tolerance
        """
        return self.__PFD_CHECK_TOL


    def get_horizon_tol(self):
        """
        Brief : Get the relative weight allowed for the last exponent band
        Return : The tolerance
        """
        return self.__HORIZON_TOL


    def get_t_end(self):
        """
        Brief : Get the default end of the time grid
        Return : The end time
        """
        return self.__T_END


    def get_n_steps(self):
        """
        Brief : Get the default number of grid steps
        Return : The number of steps
        """
        return self.__N_STEPS


    def get_min_steps(self):
        """
        Brief : Get the smallest accepted number of grid steps
        Return : The number of steps
        """
        return self.__MIN_STEPS


    def get_interior_fraction(self):
        """
        Brief : Get the fraction of t_end from which errors are measured
        Return : The fraction
        """
        return self.__INTERIOR_FRACTION


    def get_regularity_exponent(self):
        """
        Brief : Get the leading exponent handed over to the time stepping
        Return : The exponent
        """
        return self.__REGULARITY_EXPONENT


    def get_gauss_order(self):
        """
        Brief : Get the number of Gauss-Legendre nodes of the quadrature
        Return : The number of nodes
        """
        return self.__GAUSS_ORDER


CONST = Constants()


def path_tail(path_name):
    """
    Brief : Get the name of the last element (tail) in a given path
    Return : Tail of the path
    > path_name : Path from which to extract the tail
    """
    head, tail = path.split(path_name)
    return tail or path.basename(head)


def with_suffix(file, suffix):
    """
    Brief : Change the extension of the given file name
    Return : Modified file name
    > file : Name of the file to change the extension
    > suffix : New extension, dot included
    """
    return Path(file).with_suffix(suffix)


def build_path(path_name, option_folder = None, file_name = None):
    """
    Brief : Build the absolute path to requested folders and a file name
    Return : The path in a string
    > path_name : Path to start
    > option_folder : If given, a folder is added at the end of the path
    > file_name : If given, a file name is added at the end of the path
    (after option_folder)
    """
    complete_path = path_name
    if option_folder is not None:
        complete_path = path.join(complete_path, option_folder)
    if file_name is not None:
        complete_path = path.join(complete_path, file_name)
    return complete_path


def read_json(file_path):
    """
    Brief : Open a JSON document from the given path
    Return : The decoded document
    > file_path : Path of the file to open
    """
    try:
        with open(file_path, 'r') as file:
            document = json.load(file)
            lg.debug("Read done !")
            return document
    except FileNotFoundError as error:
        raise ProblemFormatError(f"The file was not found. {error}") from error
    except json.JSONDecodeError as error:
        raise ProblemFormatError(f"{path_tail(file_path)} is not valid JSON: {error}") from error


def write_json(file_path, document):
    """
    Brief : Save a document as JSON (folders created if missing)
    Return : None
    > file_path : Path of the file to write
    > document : JSON-compatible object
    """
    folder_path = path.dirname(path.abspath(file_path))
    os.makedirs(folder_path, exist_ok=True)
    with open(file_path, 'w') as file:
        # repr of floats round-trips bit-exactly
        json.dump(document, file, indent=1)
    lg.debug("Saved %s", path_tail(file_path))


def write_csv(file_path, header, rows):
    """
    Brief : Save rows of numbers as CSV with 17 significant digits
    Return : None
    > file_path : Path of the file to write
    > header : Column names
    > rows : Iterable of rows
    """
    folder_path = path.dirname(path.abspath(file_path))
    os.makedirs(folder_path, exist_ok=True)
    with open(file_path, 'w', newline='') as file:
        writer = csv.writer(file)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(value) for value in row])
    lg.debug("Saved %s", path_tail(file_path))


def format_number(value):
    """
    Brief : Format a number for CSV output
    Return : The text, 17 significant digits for floats
    > value : Number (or text, returned unchanged)
    """
    if isinstance(value, (int, str)):
        return str(value)
    return f'{float(value):.17g}'
