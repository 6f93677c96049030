"""init tests"""