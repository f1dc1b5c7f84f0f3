# Scripts directory

