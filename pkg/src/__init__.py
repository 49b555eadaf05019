##module for core app functionality: tube simulator and Rural Postman pipeline
